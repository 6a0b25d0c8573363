"""Structural graph statistics: clustering, diameter, main core.

All statistics are computed on the undirected neighborhood structure
(the union of in- and out-arcs), matching the summary convention used by
the public network repositories these edge lists come from: the local
clustering coefficient of a node with degree d counts triangles against
d(d-1)/2 regardless of arc directions, and the diameter is the longest
shortest path inside the largest connected component of the undirected
projection, flagged as infinite when the graph is disconnected.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph


@dataclass(frozen=True)
class GraphStats:
    """Summary row for a network (one line of the stats report)."""

    n: int
    m: int
    directed: bool
    weighted: bool
    acc: float
    diameter: int
    connected: bool
    main_core_size: int

    def diameter_display(self) -> str:
        """Numeric diameter, or "∞ (d)" with the largest component's value."""
        if self.connected:
            return str(self.diameter)
        return f"∞ ({self.diameter})"


def local_clustering(graph: Graph) -> np.ndarray:
    """Per-node clustering coefficient on the undirected projection."""
    tri = _kernels.triangle_counts(graph.union_indptr, graph.union_indices)
    deg = graph.degrees.astype(np.float64)
    out = np.zeros(graph.n, dtype=np.float64)
    mask = deg >= 2
    cap = deg[mask] * (deg[mask] - 1.0) / 2.0
    out[mask] = tri[mask] / cap
    return out


def clustering(graph: Graph) -> float:
    """Average clustering coefficient (nodes with degree < 2 contribute 0)."""
    return float(local_clustering(graph).mean())


def components(graph: Graph):
    """Weakly connected component labels and count."""
    labels, count = _kernels.connected_components(graph.union_indptr,
                                                  graph.union_indices)
    return labels, int(count)


def diameter(graph: Graph):
    """Exact diameter of the largest component; returns (value, connected).

    Runs a BFS from every node of the largest component of the undirected
    projection; for disconnected graphs the true diameter is infinite and
    the returned value belongs to the largest component.
    """
    labels, count = components(graph)
    if count == 1:
        sources = np.arange(graph.n, dtype=np.int64)
    else:
        sizes = np.bincount(labels, minlength=count)
        sources = np.flatnonzero(labels == int(sizes.argmax())).astype(np.int64)
    ecc = _kernels.bfs_eccentricities(graph.union_indptr, graph.union_indices,
                                      sources)
    return int(ecc.max()) if ecc.size else 0, count == 1


def main_core(graph: Graph):
    """Largest k such that the k-core is non-empty, with its members.

    Degrees are taken in the undirected projection. Returns (k, members)
    where members is a sorted index array.
    """
    core = _kernels.core_numbers(graph.union_indptr, graph.union_indices)
    k = int(core.max()) if core.size else 0
    return k, np.flatnonzero(core == k).astype(np.int64)


def graph_stats(graph: Graph) -> GraphStats:
    """Assemble the summary statistics row for a graph."""
    acc = clustering(graph)
    diam, connected = diameter(graph)
    _, members = main_core(graph)
    return GraphStats(n=graph.n, m=graph.m, directed=graph.directed,
                      weighted=graph.weighted, acc=acc, diameter=diam,
                      connected=connected, main_core_size=int(members.size))
