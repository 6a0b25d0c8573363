"""Numba kernels for cascades, shortest-path sweeps and structural statistics.

All kernels operate on CSR arrays (int64 indptr / indices) over dense node
indices. Parallel kernels only write to per-node output slots and never
accumulate into shared state, so results are bit-identical for any thread
count. Randomized kernels draw from counter-based splitmix64 streams keyed
by (seed, node, run), which keeps them independent of scheduling as well.
"""
from __future__ import annotations

import numpy as np
from numba import get_num_threads, njit, prange

_U64_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_U64_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_U64_MIX2 = np.uint64(0x94D049BB133111EB)
_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53


@njit(cache=True)
def _mix64(x):
    z = x + _U64_GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _U64_MIX1
    z = (z ^ (z >> np.uint64(27))) * _U64_MIX2
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def _stream_seed(seed, a, b):
    """Derive an independent stream state from (seed, a, b)."""
    s = _mix64(np.uint64(seed) ^ (np.uint64(a) * _U64_MIX1))
    return _mix64(s ^ (np.uint64(b) * _U64_MIX2))


@njit(cache=True)
def _next_u01(state):
    """Advance a splitmix64 stream; returns (new_state, uniform in [0, 1))."""
    state = state + _U64_GOLDEN
    z = state
    z = (z ^ (z >> np.uint64(30))) * _U64_MIX1
    z = (z ^ (z >> np.uint64(27))) * _U64_MIX2
    z = z ^ (z >> np.uint64(31))
    return state, (z >> np.uint64(11)) * _INV_2_53


# -- linear threshold cascade ---------------------------------------------

@njit(cache=True)
def lt_run(indptr, indices, need, zero_nodes, seeds,
           active, counts, counted, order, round_ends):
    """One synchronous threshold cascade over the neighborhood CSR.

    ``need[i]`` is the integer activation count (``need > degree`` means the
    node can never fire); ``zero_nodes`` lists nodes that fire in round 1
    with no active neighbors. ``active``/``counts`` must be zeroed scratch of
    length n; ``counted``/``order`` length-n scratch; ``round_ends`` length
    n + 2. Returns (size, rounds, ncounted): ``order[:size]`` holds the
    activation order, round r's activations are
    ``order[round_ends[r]:round_ends[r + 1]]`` (round 0 = the seed set), and
    ``counted[:ncounted]`` lists every node whose counter was touched, for
    scratch reset by the caller.
    """
    sz = 0
    for k in range(seeds.shape[0]):
        s = seeds[k]
        if not active[s]:
            active[s] = True
            order[sz] = s
            sz += 1
    round_ends[0] = 0
    round_ends[1] = sz
    rounds = 0
    ncounted = 0
    lo, hi = 0, sz
    first = True
    while True:
        for fi in range(lo, hi):
            u = order[fi]
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if not active[v]:
                    c = counts[v]
                    if c == 0:
                        counted[ncounted] = v
                        ncounted += 1
                    c += 1
                    counts[v] = c
                    if c == need[v]:
                        order[sz] = v
                        sz += 1
        if first:
            for k in range(zero_nodes.shape[0]):
                z = zero_nodes[k]
                if not active[z]:
                    order[sz] = z
                    sz += 1
            first = False
        if sz == hi:
            break
        for fi in range(hi, sz):
            active[order[fi]] = True
        rounds += 1
        round_ends[rounds + 1] = sz
        lo, hi = hi, sz
    return sz, rounds, ncounted


@njit(cache=True, parallel=True)
def lt_sizes_all(indptr, indices, need, zero_nodes, seed_indptr, seed_indices):
    """Cascade size for every node i seeded with {i} ∪ seed CSR row i.

    Output slots are written independently per node, so any thread count
    yields identical results.
    """
    n = indptr.shape[0] - 1
    sizes = np.zeros(n, np.int64)
    nchunks = get_num_threads()
    if nchunks < 1:
        nchunks = 1
    for c in prange(nchunks):
        active = np.zeros(n, np.bool_)
        counts = np.zeros(n, np.int64)
        counted = np.empty(n, np.int64)
        order = np.empty(n, np.int64)
        round_ends = np.empty(n + 2, np.int64)
        seedbuf = np.empty(n, np.int64)
        for i in range(c, n, nchunks):
            cnt = 0
            seedbuf[cnt] = i
            cnt += 1
            for e in range(seed_indptr[i], seed_indptr[i + 1]):
                v = seed_indices[e]
                if v != i:
                    seedbuf[cnt] = v
                    cnt += 1
            sz, rounds, ncounted = lt_run(indptr, indices, need, zero_nodes,
                                          seedbuf[:cnt], active, counts,
                                          counted, order, round_ends)
            sizes[i] = sz
            for k in range(sz):
                active[order[k]] = False
            for k in range(ncounted):
                counts[counted[k]] = 0
    return sizes


# -- independent cascade ----------------------------------------------------

@njit(cache=True)
def ic_run(out_indptr, out_indices, seeds, p, state, active, order, round_ends):
    """One independent cascade; returns (size, rounds, state).

    Each node attempts its out-arcs once, in CSR order, in the round after
    it becomes active; a draw is consumed only when the target is still
    inactive, and succeeds when the draw is < p.
    """
    sz = 0
    for k in range(seeds.shape[0]):
        s = seeds[k]
        if not active[s]:
            active[s] = True
            order[sz] = s
            sz += 1
    round_ends[0] = 0
    round_ends[1] = sz
    rounds = 0
    lo, hi = 0, sz
    while hi > lo:
        for fi in range(lo, hi):
            u = order[fi]
            for e in range(out_indptr[u], out_indptr[u + 1]):
                v = out_indices[e]
                if not active[v]:
                    state, draw = _next_u01(state)
                    if draw < p:
                        active[v] = True
                        order[sz] = v
                        sz += 1
        if sz > hi:
            rounds += 1
            round_ends[rounds + 1] = sz
        lo, hi = hi, sz
    return sz, rounds, state


@njit(cache=True, parallel=True)
def icr_mean_sizes(out_indptr, out_indices, p, runs, seed):
    """Mean cascade size from each singleton seed over per-(node, run) streams."""
    n = out_indptr.shape[0] - 1
    means = np.zeros(n, np.float64)
    nchunks = get_num_threads()
    if nchunks < 1:
        nchunks = 1
    for c in prange(nchunks):
        active = np.zeros(n, np.bool_)
        order = np.empty(n, np.int64)
        round_ends = np.empty(n + 2, np.int64)
        seeds1 = np.empty(1, np.int64)
        for u in range(c, n, nchunks):
            total = 0
            for r in range(runs):
                seeds1[0] = u
                state = _stream_seed(seed, u, r)
                sz, rounds, state = ic_run(out_indptr, out_indices, seeds1,
                                           p, state, active, order, round_ends)
                total += sz
                for k in range(sz):
                    active[order[k]] = False
            means[u] = total / runs
    return means


# -- betweenness (Brandes, unit lengths) ------------------------------------

@njit(cache=True)
def brandes(out_indptr, out_indices, in_indptr, in_indices):
    """Raw betweenness over ordered pairs; single-threaded for determinism."""
    n = out_indptr.shape[0] - 1
    bc = np.zeros(n, np.float64)
    dist = np.empty(n, np.int64)
    sigma = np.empty(n, np.float64)
    delta = np.empty(n, np.float64)
    order = np.empty(n, np.int64)
    for s in range(n):
        for i in range(n):
            dist[i] = -1
            sigma[i] = 0.0
            delta[i] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head, tail = 0, 1
        while head < tail:
            u = order[head]
            head += 1
            du = dist[u]
            for e in range(out_indptr[u], out_indptr[u + 1]):
                v = out_indices[e]
                if dist[v] < 0:
                    dist[v] = du + 1
                    order[tail] = v
                    tail += 1
                if dist[v] == du + 1:
                    sigma[v] += sigma[u]
        for k in range(tail - 1, -1, -1):
            w = order[k]
            coeff = (1.0 + delta[w]) / sigma[w]
            dw = dist[w]
            for e in range(in_indptr[w], in_indptr[w + 1]):
                v = in_indices[e]
                if dist[v] == dw - 1:
                    delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
    return bc


# -- BFS sweeps --------------------------------------------------------------

@njit(cache=True, parallel=True)
def bfs_eccentricities(indptr, indices, sources):
    """Eccentricity of each source within its component (unit lengths)."""
    n = indptr.shape[0] - 1
    k = sources.shape[0]
    ecc = np.zeros(k, np.int64)
    nchunks = get_num_threads()
    if nchunks < 1:
        nchunks = 1
    for c in prange(nchunks):
        dist = np.full(n, -1, np.int64)
        queue = np.empty(n, np.int64)
        for si in range(c, k, nchunks):
            s = sources[si]
            dist[s] = 0
            queue[0] = s
            head, tail = 0, 1
            far = 0
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[u]
                if du > far:
                    far = du
                for e in range(indptr[u], indptr[u + 1]):
                    v = indices[e]
                    if dist[v] < 0:
                        dist[v] = du + 1
                        queue[tail] = v
                        tail += 1
            ecc[si] = far
            for qi in range(tail):
                dist[queue[qi]] = -1
    return ecc


@njit(cache=True)
def connected_components(indptr, indices):
    """Component labels over an undirected (symmetric) CSR; returns (labels, count)."""
    n = indptr.shape[0] - 1
    labels = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    comp = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = comp
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if labels[v] < 0:
                    labels[v] = comp
                    queue[tail] = v
                    tail += 1
        comp += 1
    return labels, comp


# -- structural statistics ----------------------------------------------------

@njit(cache=True, parallel=True)
def triangle_counts(indptr, indices):
    """Triangles through each node of a symmetric CSR with sorted rows."""
    n = indptr.shape[0] - 1
    tri = np.zeros(n, np.int64)
    for u in prange(n):
        t = 0
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            a, b = indptr[u], indptr[v]
            ea, eb = indptr[u + 1], indptr[v + 1]
            while a < ea and b < eb:
                x = indices[a]
                y = indices[b]
                if x == y:
                    t += 1
                    a += 1
                    b += 1
                elif x < y:
                    a += 1
                else:
                    b += 1
        tri[u] = t // 2
    return tri


@njit(cache=True)
def core_numbers(indptr, indices):
    """k-core numbers of a symmetric CSR (Batagelj–Zaveršnik peeling)."""
    n = indptr.shape[0] - 1
    deg = np.empty(n, np.int64)
    maxdeg = 0
    for i in range(n):
        deg[i] = indptr[i + 1] - indptr[i]
        if deg[i] > maxdeg:
            maxdeg = deg[i]
    bins = np.zeros(maxdeg + 2, np.int64)
    for i in range(n):
        bins[deg[i]] += 1
    start = 0
    for d in range(maxdeg + 1):
        cnt = bins[d]
        bins[d] = start
        start += cnt
    pos = np.empty(n, np.int64)
    vert = np.empty(n, np.int64)
    for i in range(n):
        pos[i] = bins[deg[i]]
        vert[pos[i]] = i
        bins[deg[i]] += 1
    for d in range(maxdeg, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0
    core = deg.copy()
    for k in range(n):
        v = vert[k]
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if core[u] > core[v]:
                du = core[u]
                pu = pos[u]
                pw = bins[du]
                w = vert[pw]
                if u != w:
                    pos[u] = pw
                    pos[w] = pu
                    vert[pu] = w
                    vert[pw] = u
                bins[du] += 1
                core[u] -= 1
    return core


def warm_up():
    """Compile every kernel on a two-node graph (keeps timed runs honest)."""
    indptr = np.array([0, 1, 2], dtype=np.int64)
    indices = np.array([1, 0], dtype=np.int64)
    need = np.ones(2, dtype=np.int64)
    zero = np.empty(0, dtype=np.int64)
    seeds = np.zeros(1, dtype=np.int64)
    active = np.zeros(2, np.bool_)
    counts = np.zeros(2, np.int64)
    scratch = np.empty(2, np.int64)
    order = np.empty(2, np.int64)
    rends = np.empty(4, np.int64)
    lt_run(indptr, indices, need, zero, seeds, active, counts,
           scratch, order, rends)
    lt_sizes_all(indptr, indices, need, zero, indptr, indices)
    ic_run(indptr, indices, seeds, 0.5, _stream_seed(0, 0, 0),
           np.zeros(2, np.bool_), order, rends)
    icr_mean_sizes(indptr, indices, 0.5, 1, 0)
    brandes(indptr, indices, indptr, indices)
    bfs_eccentricities(indptr, indices, np.arange(2, dtype=np.int64))
    connected_components(indptr, indices)
    triangle_counts(indptr, indices)
    core_numbers(indptr, indices)
