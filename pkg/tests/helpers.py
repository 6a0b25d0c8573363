"""Shared generators and independent oracles.

Every oracle here recomputes its quantity from scratch with a naive
algorithm (full per-round rescans, dense matrices, double sums) and builds
its own adjacency straight from endpoint pairs, so agreement with the
package is evidence rather than a tautology.
"""
from __future__ import annotations

from collections import deque

import numpy as np

from influence_rank import Graph


def make_arcs(rng, n, m):
    """Random endpoint pairs; self-loops and duplicates are intentional."""
    return rng.integers(0, n, m), rng.integers(0, n, m)


def random_graph(rng, n, m, *, directed):
    src, dst = make_arcs(rng, n, m)
    return Graph.from_arrays(src, dst, directed=directed)


def clean_pairs(src, dst, *, directed):
    """The arc set a loader should retain: no self-loops, no duplicates."""
    pairs = set()
    for a, b in zip(np.asarray(src).tolist(), np.asarray(dst).tolist()):
        if a == b:
            continue
        pairs.add((a, b) if directed else (min(a, b), max(a, b)))
    return pairs


def adjacency_sets(n, src, dst, *, directed):
    """(union, out) neighborhood sets built straight from endpoint pairs."""
    union = [set() for _ in range(n)]
    out = [set() for _ in range(n)]
    for a, b in zip(np.asarray(src).tolist(), np.asarray(dst).tolist()):
        if a == b:
            continue
        out[a].add(b)
        union[a].add(b)
        union[b].add(a)
        if not directed:
            out[b].add(a)
    return union, out


def graph_sets(graph):
    """(union, out) sets read back from a built Graph, for invariant checks."""
    union = [set(graph.neighbors(i).tolist()) for i in range(graph.n)]
    out = [set(graph.out_neighbors(i).tolist()) for i in range(graph.n)]
    return union, out


def lt_oracle(union, theta, seeds, comparison="ge"):
    """Fixed point of the threshold process by literal full rescans.

    Each round recomputes every inactive node's active fraction by float
    division, exactly the displayed activation rule. Returns (active set,
    trace) with trace[0] = seeds.
    """
    active = set(int(s) for s in seeds)
    trace = [sorted(active)]
    n = len(union)
    while True:
        newly = []
        for i in range(n):
            if i in active or not union[i]:
                continue
            frac = len(active & union[i]) / len(union[i])
            hit = frac >= theta[i] if comparison == "ge" else frac > theta[i]
            if hit:
                newly.append(i)
        if not newly:
            break
        active.update(newly)
        trace.append(newly)
    return active, trace


def bfs_counts(n, out, s):
    """(dist, number of shortest paths) from s; dist -1 where unreachable."""
    dist = np.full(n, -1, np.int64)
    paths = np.zeros(n)
    dist[s] = 0
    paths[s] = 1.0
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in out[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
            if dist[w] == dist[v] + 1:
                paths[w] += paths[v]
    return dist, paths


def betweenness_oracle(n, out):
    """Raw ordered-pair betweenness via the sigma_sv * sigma_vt identity."""
    dist = np.empty((n, n), np.int64)
    paths = np.empty((n, n))
    for s in range(n):
        dist[s], paths[s] = bfs_counts(n, out, s)
    raw = np.zeros(n)
    for v in range(n):
        through = dist[:, v][:, None] + dist[v, :][None, :]
        ok = ((dist[:, v][:, None] >= 0) & (dist[v, :][None, :] >= 0)
              & (dist >= 0) & (through == dist) & (paths > 0))
        share = np.zeros((n, n))
        np.divide(paths[:, v][:, None] * paths[v, :][None, :], paths,
                  out=share, where=ok)
        share[v, :] = 0.0
        share[:, v] = 0.0
        raw[v] = share.sum()
    return raw


def pagerank_oracle(n, out, alpha=0.85):
    """Dense linear solve of the probability-normalized random surfer."""
    M = np.zeros((n, n))
    for j in range(n):
        if out[j]:
            for i in out[j]:
                M[i, j] = 1.0 / len(out[j])
        else:
            M[:, j] = 1.0 / n
    return np.linalg.solve(np.eye(n) - alpha * M,
                           np.full(n, (1.0 - alpha) / n))


def gini_oracle(values):
    """Mean absolute difference over twice the mean, by direct double sum."""
    x = np.asarray(values, dtype=np.float64)
    n = x.shape[0]
    total = float(np.abs(x[:, None] - x[None, :]).sum())
    denom = 2.0 * n * float(x.sum())
    return total / denom if denom else 0.0


def floyd_warshall(n, union):
    """Dense all-pairs hop distances over union neighborhoods."""
    INF = float("inf")
    d = np.full((n, n), INF)
    np.fill_diagonal(d, 0.0)
    for i in range(n):
        for j in union[i]:
            d[i, j] = 1.0
    for k in range(n):
        d = np.minimum(d, d[:, k][:, None] + d[k, :][None, :])
    return d


def core_number_oracle(n, union):
    """Peel minimum-degree nodes one at a time with plain sets."""
    adj = [set(s) for s in union]
    deg = {i: len(adj[i]) for i in range(n)}
    core = [0] * n
    k = 0
    remaining = set(range(n))
    while remaining:
        i = min(remaining, key=lambda v: (deg[v], v))
        k = max(k, deg[i])
        core[i] = k
        remaining.remove(i)
        for j in adj[i]:
            adj[j].discard(i)
            deg[j] -= 1
        del deg[i]
    return core


def permute_graph(rng, graph):
    """Relabel nodes by a random permutation; returns (graph, perm).

    perm maps old dense index to new dense index. Original-id bookkeeping
    is discarded so the new graph is a plain 0..n-1 relabeling.
    """
    perm = rng.permutation(graph.n)
    src, dst = graph.arc_arrays
    g2 = Graph.from_arrays(perm[src], perm[dst], directed=graph.directed,
                           num_nodes=graph.n)
    return g2, perm
