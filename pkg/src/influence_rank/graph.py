"""Graph container and edge-list input/output.

Graphs are stored immutably in compressed sparse row (CSR) form over a
dense index range ``0 .. n-1``. Original node identifiers from the input
file are kept as a sorted array, so ascending dense index corresponds to
ascending original identifier. Self-loops are dropped and duplicate edges
are collapsed at construction time; an undirected edge is stored as two
arcs. The edge count ``m`` follows the input convention: distinct arcs
for directed graphs, distinct unordered pairs for undirected graphs.
"""
from __future__ import annotations

import gzip
from functools import cached_property
from pathlib import Path

import numpy as np

from .validation import InputDataError

NPZ_FORMAT_VERSION = 1


def _csr_from_sorted_arcs(src: np.ndarray, dst: np.ndarray, n: int):
    """Build (indptr, indices) from arc arrays already sorted by (src, dst)."""
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, np.ascontiguousarray(dst, dtype=np.int64)


def _dedup_arcs(src, dst, weights):
    """Sort arcs by (src, dst) and drop duplicates, keeping the first weight.

    np.lexsort is stable, so among duplicate arcs the one appearing first in
    the input wins.
    """
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    if weights is not None:
        weights = weights[order]
    if src.size:
        keep = np.empty(src.size, dtype=bool)
        keep[0] = True
        keep[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
        src, dst = src[keep], dst[keep]
        if weights is not None:
            weights = weights[keep]
    return src, dst, weights


class Graph:
    """Immutable directed or undirected graph over dense indices.

    Do not mutate the underlying arrays; they are flagged read-only and are
    shared between views. Use :meth:`from_arrays` or :func:`load_edge_list`
    to construct instances.
    """

    def __init__(self, *, n, m, directed, out_indptr, out_indices,
                 in_indptr, in_indices, original_ids, out_weights=None):
        self.n = int(n)
        self.m = int(m)
        self.directed = bool(directed)
        self.out_indptr = out_indptr
        self.out_indices = out_indices
        self.in_indptr = in_indptr
        self.in_indices = in_indices
        self.original_ids = original_ids
        self.out_weights = out_weights
        for arr in (out_indptr, out_indices, in_indptr, in_indices,
                    original_ids, out_weights):
            if arr is not None:
                arr.setflags(write=False)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_arrays(cls, src, dst, *, directed=False, num_nodes=None,
                    weights=None, original_ids=None) -> "Graph":
        """Build a graph from dense arc endpoint arrays.

        Parameters
        ----------
        src, dst : int arrays of equal length
            Arc endpoints as dense indices in ``[0, num_nodes)``.
        directed : bool
            When False, each input pair is treated as an unordered edge and
            stored as two arcs.
        num_nodes : int, optional
            Explicit node count (permits isolated nodes). Defaults to
            ``max(endpoint) + 1``.
        weights : float array, optional
            Per-arc weights; must be finite and non-negative. Stored but not
            used by the threshold process.
        original_ids : int array, optional
            Original identifier for each dense index, strictly increasing.
        """
        src = np.asarray(src, dtype=np.int64).ravel()
        dst = np.asarray(dst, dtype=np.int64).ravel()
        if src.shape != dst.shape:
            raise ValueError("src and dst must have the same length")
        if num_nodes is None:
            if src.size == 0:
                raise InputDataError("empty graph: no nodes")
            num_nodes = int(max(src.max(), dst.max())) + 1
        n = int(num_nodes)
        if n < 1:
            raise InputDataError("empty graph: no nodes")
        if src.size and (min(src.min(), dst.min()) < 0
                         or max(src.max(), dst.max()) >= n):
            raise ValueError(f"arc endpoints out of range [0, {n})")
        if weights is not None:
            weights = np.asarray(weights, dtype=np.float64).ravel()
            if weights.shape != src.shape:
                raise ValueError("weights must align with the arc arrays")
            if weights.size and (not np.all(np.isfinite(weights))
                                 or weights.min() < 0.0):
                raise InputDataError("edge weights must be finite and non-negative")

        loops = src == dst
        if loops.any():
            keep = ~loops
            src, dst = src[keep], dst[keep]
            if weights is not None:
                weights = weights[keep]

        if directed:
            src, dst, weights = _dedup_arcs(src, dst, weights)
            m = src.size
            out_indptr, out_indices = _csr_from_sorted_arcs(src, dst, n)
            rorder = np.lexsort((src, dst))
            in_indptr, in_indices = _csr_from_sorted_arcs(dst[rorder],
                                                          src[rorder], n)
            out_weights = weights
        else:
            lo = np.minimum(src, dst)
            hi = np.maximum(src, dst)
            lo, hi, weights = _dedup_arcs(lo, hi, weights)
            m = lo.size
            src = np.concatenate([lo, hi])
            dst = np.concatenate([hi, lo])
            w2 = None if weights is None else np.concatenate([weights, weights])
            order = np.lexsort((dst, src))
            out_indptr, out_indices = _csr_from_sorted_arcs(src[order],
                                                            dst[order], n)
            out_weights = None if w2 is None else w2[order]
            in_indptr, in_indices = out_indptr, out_indices

        if original_ids is None:
            original_ids = np.arange(n, dtype=np.int64)
        else:
            original_ids = np.asarray(original_ids, dtype=np.int64)
            if original_ids.shape != (n,):
                raise ValueError(f"original_ids must have shape ({n},)")
            if n > 1 and not np.all(np.diff(original_ids) > 0):
                raise ValueError("original_ids must be strictly increasing")

        return cls(n=n, m=m, directed=directed,
                   out_indptr=out_indptr, out_indices=out_indices,
                   in_indptr=in_indptr, in_indices=in_indices,
                   original_ids=original_ids, out_weights=out_weights)

    # -- basic accessors ---------------------------------------------------

    @property
    def weighted(self) -> bool:
        return self.out_weights is not None

    @cached_property
    def out_degrees(self) -> np.ndarray:
        d = np.diff(self.out_indptr)
        d.setflags(write=False)
        return d

    @cached_property
    def in_degrees(self) -> np.ndarray:
        d = np.diff(self.in_indptr)
        d.setflags(write=False)
        return d

    @cached_property
    def _union_csr(self):
        """CSR of the neighborhood relation N(i) = out(i) ∪ in(i)."""
        if not self.directed:
            return self.out_indptr, self.out_indices
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.out_indptr))
        rsrc = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.in_indptr))
        allsrc = np.concatenate([src, rsrc])
        alldst = np.concatenate([self.out_indices, self.in_indices])
        allsrc, alldst, _ = _dedup_arcs(allsrc, alldst, None)
        indptr, indices = _csr_from_sorted_arcs(allsrc, alldst, self.n)
        indptr.setflags(write=False)
        indices.setflags(write=False)
        return indptr, indices

    @property
    def union_indptr(self) -> np.ndarray:
        return self._union_csr[0]

    @property
    def union_indices(self) -> np.ndarray:
        return self._union_csr[1]

    @cached_property
    def degrees(self) -> np.ndarray:
        """Union-neighborhood degree |N(i)| (distinct neighbors either way)."""
        d = np.diff(self.union_indptr)
        d.setflags(write=False)
        return d

    @cached_property
    def arc_arrays(self):
        """Out-arcs in COO form (src, dst), sorted by (src, dst)."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.out_indptr))
        src.setflags(write=False)
        return src, self.out_indices

    def out_neighbors(self, i: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[i]:self.out_indptr[i + 1]]

    def in_neighbors(self, i: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[i]:self.in_indptr[i + 1]]

    def neighbors(self, i: int) -> np.ndarray:
        """Union neighborhood N(i), sorted dense indices."""
        return self.union_indices[self.union_indptr[i]:self.union_indptr[i + 1]]

    def index_of(self, original_id: int) -> int:
        """Dense index of an original node identifier."""
        pos = int(np.searchsorted(self.original_ids, original_id))
        if pos >= self.n or self.original_ids[pos] != original_id:
            raise KeyError(f"unknown node identifier {original_id}")
        return pos

    def equals(self, other: "Graph") -> bool:
        """Structural equality: same adjacency, identifiers and weights."""
        if not isinstance(other, Graph):
            return False
        same = (self.n == other.n and self.m == other.m
                and self.directed == other.directed
                and np.array_equal(self.out_indptr, other.out_indptr)
                and np.array_equal(self.out_indices, other.out_indices)
                and np.array_equal(self.original_ids, other.original_ids))
        if not same:
            return False
        if (self.out_weights is None) != (other.out_weights is None):
            return False
        if self.out_weights is not None:
            return np.array_equal(self.out_weights, other.out_weights)
        return True

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        w = ", weighted" if self.weighted else ""
        return f"Graph(n={self.n}, m={self.m}, {kind}{w})"

    # -- serialization -----------------------------------------------------

    def write_edge_list(self, path) -> None:
        """Write a whitespace edge list using original identifiers.

        Directed graphs emit one line per arc; undirected graphs emit each
        edge once with the smaller identifier first. Reloading the file with
        the same flags reproduces an identical adjacency structure.
        """
        src, dst = self.arc_arrays
        ids = self.original_ids
        with open(path, "w", encoding="utf-8") as fh:
            for k in range(src.size):
                u, v = src[k], dst[k]
                if not self.directed and u > v:
                    continue
                if self.out_weights is not None:
                    fh.write(f"{ids[u]}\t{ids[v]}\t{self.out_weights[k]!r}\n")
                else:
                    fh.write(f"{ids[u]}\t{ids[v]}\n")

    def save_npz(self, path) -> None:
        """Save to a versioned .npz cache (documented binary format).

        Arrays stored: out_indptr, out_indices, original_ids, optional
        out_weights, plus a meta vector [version, n, m, directed, weighted].
        The in-CSR is rebuilt on load.
        """
        meta = np.array([NPZ_FORMAT_VERSION, self.n, self.m,
                         int(self.directed), int(self.weighted)], dtype=np.int64)
        payload = {"meta": meta, "out_indptr": self.out_indptr,
                   "out_indices": self.out_indices,
                   "original_ids": self.original_ids}
        if self.out_weights is not None:
            payload["out_weights"] = self.out_weights
        np.savez_compressed(path, **payload)

    @classmethod
    def load_npz(cls, path) -> "Graph":
        with np.load(path) as data:
            meta = data["meta"]
            if meta[0] != NPZ_FORMAT_VERSION:
                raise InputDataError(f"unsupported graph cache version {meta[0]}")
            n, m, directed = int(meta[1]), int(meta[2]), bool(meta[3])
            out_indptr = data["out_indptr"]
            out_indices = data["out_indices"]
            original_ids = data["original_ids"]
            out_weights = data["out_weights"] if "out_weights" in data else None
        src = np.repeat(np.arange(n, dtype=np.int64), np.diff(out_indptr))
        if directed:
            rorder = np.lexsort((src, out_indices))
            in_indptr, in_indices = _csr_from_sorted_arcs(
                out_indices[rorder], src[rorder], n)
        else:
            in_indptr, in_indices = out_indptr, out_indices
        return cls(n=n, m=m, directed=directed,
                   out_indptr=out_indptr, out_indices=out_indices,
                   in_indptr=in_indptr, in_indices=in_indices,
                   original_ids=original_ids, out_weights=out_weights)


def load_edge_list(path, *, directed=False, weighted=False) -> Graph:
    """Parse a whitespace-separated edge list into a :class:`Graph`.

    Lines starting with ``#`` and blank lines are skipped. Each data line
    holds two integer node identifiers and, when ``weighted``, a third
    numeric column (extra columns are ignored). Files ending in ``.gz`` are
    decompressed transparently. Malformed lines raise
    :class:`InputDataError` naming the line number.
    """
    path = Path(path)
    opener = gzip.open if path.suffix == ".gz" else open
    srcs: list[int] = []
    dsts: list[int] = []
    wts: list[float] = []
    need = 3 if weighted else 2
    try:
        fh = opener(path, "rt", encoding="utf-8")
    except OSError as exc:
        raise InputDataError(f"{path}: cannot open ({exc})") from exc
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) < need:
                raise InputDataError(
                    f"{path}:{lineno}: expected {need} columns, got {len(parts)}")
            try:
                u = int(parts[0])
                v = int(parts[1])
            except ValueError:
                raise InputDataError(
                    f"{path}:{lineno}: non-integer node identifier") from None
            srcs.append(u)
            dsts.append(v)
            if weighted:
                try:
                    w = float(parts[2])
                except ValueError:
                    raise InputDataError(
                        f"{path}:{lineno}: non-numeric edge weight") from None
                if not np.isfinite(w) or w < 0.0:
                    raise InputDataError(
                        f"{path}:{lineno}: edge weight must be finite and "
                        f"non-negative, got {parts[2]}")
                wts.append(w)
    if not srcs:
        raise InputDataError(f"{path}: no edges found (empty graph)")

    src = np.asarray(srcs, dtype=np.int64)
    dst = np.asarray(dsts, dtype=np.int64)
    ids = np.unique(np.concatenate([src, dst]))
    src = np.searchsorted(ids, src)
    dst = np.searchsorted(ids, dst)
    weights = np.asarray(wts, dtype=np.float64) if weighted else None
    return Graph.from_arrays(src, dst, directed=directed, num_nodes=ids.size,
                             weights=weights, original_ids=ids)
