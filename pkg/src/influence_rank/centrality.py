"""Centrality measures: Btwn, PgR, ICR, LTR and FLTR.

Every measure maps a graph to one value per node in [0, 1]:

* ``Btwn``: shortest-path betweenness over ordered pairs, normalized by
  (n-1)(n-2).
* ``PgR``: PageRank as a probability vector (sums to 1), damping ``alpha``,
  uniform personalization, dangling mass redistributed uniformly.
* ``ICR``: mean independent-cascade spread size from each singleton seed,
  normalized by the largest mean so the maximum is exactly 1.
* ``LTR``: threshold-cascade spread fraction seeded with a node and its
  full neighborhood {i} ∪ N(i).
* ``FLTR``: the same but seeded with the out-neighborhood {i} ∪ N⁺(i),
  the forward variant; on undirected graphs LTR and FLTR coincide.

The functional API returns :class:`RankVector`; thin scikit-learn style
estimator wrappers with ``fit`` / ``get_params`` are provided alongside.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Callable, Mapping

import numpy as np
from sklearn.base import BaseEstimator

from . import _kernels
from .diffusion import (ThresholdAssignment, as_assignment, need_counts,
                        resolve_comparison, zero_need_nodes)
from .graph import Graph
from .validation import check_graph, check_probability

MEASURES = ("Btwn", "PgR", "ICR", "LTR", "FLTR")


@dataclass(frozen=True)
class RankVector:
    """Per-node ranking values with measure label and parameters.

    ``resolution`` is the quantization denominator for exact tie detection:
    spread-based measures produce rationals k/resolution, so two nodes tie
    exactly when their quantized numerators match. It is None for measures
    without a natural rational grid.
    """

    values: np.ndarray
    measure: str
    params: Mapping[str, Any] = field(default_factory=dict)
    resolution: int | None = None

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("rank values must be one-dimensional")
        if not np.all(np.isfinite(arr)):
            raise ValueError("rank values must be finite")
        if arr.size and arr.min() < 0.0:
            raise ValueError("rank values must be non-negative")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def order(self) -> np.ndarray:
        """Indices sorted by descending value, ties by ascending index."""
        return np.lexsort((np.arange(self.n), -self.values))

    def top(self, k: int) -> np.ndarray:
        return self.order()[:k]

    def quantized(self) -> np.ndarray:
        """Tie-exact representation: integer numerators when a resolution
        is set, raw float values otherwise."""
        if self.resolution is None:
            return self.values
        return np.rint(self.values * self.resolution).astype(np.int64)


def _seed64(seed: int) -> np.uint64:
    return np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF)


# -- measures ---------------------------------------------------------------

def betweenness(graph: Graph) -> RankVector:
    """Betweenness centrality normalized by the (n-1)(n-2) ordered pairs."""
    check_graph(graph)
    raw = _kernels.brandes(graph.out_indptr, graph.out_indices,
                           graph.in_indptr, graph.in_indices)
    denom = (graph.n - 1) * (graph.n - 2)
    values = raw / denom if denom > 0 else np.zeros(graph.n)
    return RankVector(values, "Btwn", {})


def pagerank(graph: Graph, alpha: float = 0.85, tol: float = 1e-10,
             max_iter: int = 200) -> RankVector:
    """Power-iteration PageRank; emits a warning when not converged.

    The result is a probability vector: uniform personalization (1-alpha)/n
    plus uniformly redistributed dangling mass keep the total at 1.
    """
    check_graph(graph)
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    n = graph.n
    src, dst = graph.arc_arrays
    out_deg = graph.out_degrees
    dangling = out_deg == 0
    inv_deg = np.zeros(n)
    inv_deg[~dangling] = 1.0 / out_deg[~dangling]
    base = (1.0 - alpha) / n
    x = np.full(n, 1.0 / n)
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        w = x * inv_deg
        contrib = np.bincount(dst, weights=w[src], minlength=n)
        x_new = base + alpha * (contrib + x[dangling].sum() / n)
        err = np.abs(x_new - x).sum()
        x = x_new
        if err < tol:
            converged = True
            break
    if not converged:
        warnings.warn(f"PageRank did not converge in {max_iter} iterations "
                      f"(L1 residual above {tol})", RuntimeWarning,
                      stacklevel=2)
    return RankVector(x, "PgR", {"alpha": alpha, "tol": tol,
                                 "max_iter": max_iter,
                                 "converged": converged,
                                 "iterations": iterations})


def icr(graph: Graph, p: float = 0.01, runs: int = 100,
        seed: int = 0) -> RankVector:
    """Independent cascade rank: mean spread from each node over ``runs``
    cascades, normalized so the best spreader scores exactly 1.

    Random streams are derived from (seed, node, run), so results do not
    depend on thread count or evaluation order.
    """
    check_graph(graph)
    p = check_probability(p)
    if runs < 1:
        raise ValueError(f"runs must be positive, got {runs}")
    means = _kernels.icr_mean_sizes(graph.out_indptr, graph.out_indices,
                                    p, runs, _seed64(seed))
    values = means / means.max()
    return RankVector(values, "ICR", {"p": p, "runs": runs, "seed": seed})


def _lt_sizes(graph: Graph, assign: ThresholdAssignment, comparison: str,
              forward: bool) -> np.ndarray:
    need = need_counts(assign.values, graph.degrees, comparison)
    zeros = zero_need_nodes(need, graph.degrees)
    if forward:
        seed_indptr, seed_indices = graph.out_indptr, graph.out_indices
    else:
        seed_indptr, seed_indices = graph.union_indptr, graph.union_indices
    return _kernels.lt_sizes_all(graph.union_indptr, graph.union_indices,
                                 need, zeros, seed_indptr, seed_indices)


def _threshold_params(assign: ThresholdAssignment) -> dict:
    return {"scheme": assign.scheme, **dict(assign.params)}


def ltr(graph: Graph, thresholds=0.5, *, comparison: str | None = None) -> RankVector:
    """Linear threshold rank: spread fraction seeded with {i} ∪ N(i)."""
    check_graph(graph)
    cmp = resolve_comparison(comparison)
    assign = as_assignment(graph, thresholds)
    sizes = _lt_sizes(graph, assign, cmp, forward=False)
    params = {"comparison": cmp, "thresholds": _threshold_params(assign)}
    return RankVector(sizes / graph.n, "LTR", params, resolution=graph.n)


def fltr(graph: Graph, thresholds=0.5, *, comparison: str | None = None) -> RankVector:
    """Forward linear threshold rank: spread fraction seeded with {i} ∪ N⁺(i)."""
    check_graph(graph)
    cmp = resolve_comparison(comparison)
    assign = as_assignment(graph, thresholds)
    sizes = _lt_sizes(graph, assign, cmp, forward=True)
    params = {"comparison": cmp, "thresholds": _threshold_params(assign)}
    return RankVector(sizes / graph.n, "FLTR", params, resolution=graph.n)


def fltr_sampled(graph: Graph, low: float, high: float, *, runs: int,
                 seed: int = 0, lo_exclusive: bool = True,
                 comparison: str | None = None,
                 per_run: Callable[[int, RankVector, ThresholdAssignment], None]
                 | None = None) -> RankVector:
    """Mean FLTR over ``runs`` independent threshold draws from an interval.

    Per-run sub-seeds are spawned from the master seed with
    ``numpy.random.SeedSequence``, so the draw for run r never depends on
    thread count or on how many runs precede it being parallelized. Spread
    sizes are accumulated as integers and divided once, making the mean a
    rational with denominator ``runs * n`` (the vector's resolution). The
    optional ``per_run`` callback receives each run's rank vector and
    threshold assignment, for per-run metric aggregation.
    """
    from .thresholds import random_interval

    check_graph(graph)
    cmp = resolve_comparison(comparison)
    if runs < 1:
        raise ValueError(f"runs must be positive, got {runs}")
    children = np.random.SeedSequence(seed).spawn(runs)
    total = np.zeros(graph.n, dtype=np.int64)
    for r in range(runs):
        assign = random_interval(graph, low, high, lo_exclusive=lo_exclusive,
                                 rng=np.random.default_rng(children[r]),
                                 provenance={"seed": seed, "run": r})
        sizes = _lt_sizes(graph, assign, cmp, forward=True)
        total += sizes
        if per_run is not None:
            run_params = {"comparison": cmp,
                          "thresholds": _threshold_params(assign)}
            per_run(r, RankVector(sizes / graph.n, "FLTR", run_params,
                                  resolution=graph.n), assign)
    values = total / (runs * graph.n)
    params = {"comparison": cmp, "low": low, "high": high,
              "lo_exclusive": lo_exclusive, "runs": runs, "seed": seed}
    return RankVector(values, "FLTR", params, resolution=runs * graph.n)


def write_rank_csv(rank: RankVector, graph: Graph, fh) -> None:
    """Export ``original_id,value`` rows sorted by descending value, ties by
    ascending identifier. Output is deterministic byte for byte."""
    import csv

    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["original_id", "value"])
    ids = graph.original_ids
    for i in rank.order():
        writer.writerow([int(ids[i]), repr(float(rank.values[i]))])


# -- estimator layer ----------------------------------------------------------

class _RankEstimator(BaseEstimator):
    """Base for rank estimators: ``fit(graph)`` stores ``values_``/``rank_``."""

    measure: str = ""

    def _compute(self, graph: Graph) -> RankVector:  # pragma: no cover
        raise NotImplementedError

    def fit(self, X, y=None):
        graph = check_graph(X)
        rank = self._compute(graph)
        self.rank_ = rank
        self.values_ = rank.values
        self.n_nodes_ = graph.n
        return self

    def fit_rank(self, X) -> RankVector:
        return self.fit(X).rank_


class BetweennessRank(_RankEstimator):
    """Estimator wrapper around :func:`betweenness`."""

    measure = "Btwn"

    def _compute(self, graph):
        return betweenness(graph)


class PageRankScore(_RankEstimator):
    measure = "PgR"

    def __init__(self, alpha: float = 0.85, tol: float = 1e-10,
                 max_iter: int = 200):
        self.alpha = alpha
        self.tol = tol
        self.max_iter = max_iter

    def _compute(self, graph):
        rank = pagerank(graph, alpha=self.alpha, tol=self.tol,
                        max_iter=self.max_iter)
        self.converged_ = rank.params["converged"]
        return rank


class IndependentCascadeRank(_RankEstimator):
    measure = "ICR"

    def __init__(self, p: float = 0.01, runs: int = 100, seed: int = 0):
        self.p = p
        self.runs = runs
        self.seed = seed

    def _compute(self, graph):
        return icr(graph, p=self.p, runs=self.runs, seed=self.seed)


class LinearThresholdRank(_RankEstimator):
    measure = "LTR"

    def __init__(self, thresholds=0.5, comparison: str | None = None):
        self.thresholds = thresholds
        self.comparison = comparison

    def _compute(self, graph):
        return ltr(graph, self.thresholds, comparison=self.comparison)


class ForwardLinearThresholdRank(_RankEstimator):
    measure = "FLTR"

    def __init__(self, thresholds=0.5, comparison: str | None = None):
        self.thresholds = thresholds
        self.comparison = comparison

    def _compute(self, graph):
        return fltr(graph, self.thresholds, comparison=self.comparison)


class SampledForwardRank(_RankEstimator):
    """Mean FLTR over random threshold draws from an interval."""

    measure = "FLTR"

    def __init__(self, low: float = 0.0, high: float = 1.0, runs: int = 100,
                 seed: int = 0, lo_exclusive: bool = True,
                 comparison: str | None = None):
        self.low = low
        self.high = high
        self.runs = runs
        self.seed = seed
        self.lo_exclusive = lo_exclusive
        self.comparison = comparison

    def _compute(self, graph):
        return fltr_sampled(graph, self.low, self.high, runs=self.runs,
                            seed=self.seed, lo_exclusive=self.lo_exclusive,
                            comparison=self.comparison)


ESTIMATORS = {
    "Btwn": BetweennessRank,
    "PgR": PageRankScore,
    "ICR": IndependentCascadeRank,
    "LTR": LinearThresholdRank,
    "FLTR": ForwardLinearThresholdRank,
}
