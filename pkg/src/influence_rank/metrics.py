"""Distribution metrics over rankings and top-set spread measurements.

The six quantities reported per experiment row: population standard
deviation, number of distinct ranking values, Gini coefficient, and the
spread fractions achieved by three seed families (top 10 actors, top 10%
of actors, holders of the top 10% of distinct values). Ties are always
broken by ascending node identifier.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .centrality import RankVector
from .diffusion import lt_spread
from .graph import Graph


def gini(values) -> float:
    """Gini coefficient: sum of |x_i - x_j| over all ordered pairs divided
    by 2 * n * sum(x).

    Uses the sorted O(n log n) equivalent of the double sum. Values must be
    non-negative; an all-zero vector has no defined concentration and is
    reported as 0 with a warning.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("gini expects a non-empty one-dimensional vector")
    if not np.all(np.isfinite(x)):
        raise ValueError("gini expects finite values")
    if x.min() < 0.0:
        raise ValueError("gini expects non-negative values")
    total = x.sum()
    if total == 0.0:
        warnings.warn("gini of an all-zero vector is undefined; returning 0",
                      RuntimeWarning, stacklevel=2)
        return 0.0
    xs = np.sort(x)
    if xs[0] == xs[-1]:
        return 0.0
    n = xs.size
    coeff = 2.0 * np.arange(n, dtype=np.float64) - n + 1.0
    g = float(np.dot(coeff, xs) / (n * total))
    return max(g, 0.0)


@dataclass(frozen=True)
class RankStats:
    sigma: float
    distinct: int


def rank_stats(rank: RankVector) -> RankStats:
    """Population standard deviation and distinct-value count of a ranking.

    Distinctness is decided on the quantized representation when the rank
    carries a resolution (spread counts are rationals k/resolution), which
    keeps averaged vectors from splitting exact ties through float error.
    """
    sigma = float(np.std(rank.values))
    distinct = int(np.unique(rank.quantized()).size)
    return RankStats(sigma=sigma, distinct=distinct)


@dataclass(frozen=True)
class TopResult:
    """Spread fraction achieved by a seed family, with the seeds used."""

    value: float
    seeds: np.ndarray

    @property
    def size(self) -> int:
        return int(self.seeds.shape[0])


def _spread_fraction(graph, seeds, thresholds, comparison):
    res = lt_spread(graph, seeds, thresholds, comparison=comparison)
    return res.size / graph.n


def _require_top_capacity(rank: RankVector):
    if rank.n < 10:
        raise ValueError(f"top metrics require at least 10 nodes, got {rank.n}")


def top10(graph: Graph, rank: RankVector, thresholds, *,
          comparison: str | None = None) -> TopResult:
    """Spread fraction from the 10 highest-ranked actors."""
    _require_top_capacity(rank)
    seeds = rank.top(10)
    return TopResult(_spread_fraction(graph, seeds, thresholds, comparison),
                     seeds)


def top10pct_actors(graph: Graph, rank: RankVector, thresholds, *,
                    comparison: str | None = None) -> TopResult:
    """Spread fraction from the floor(n/10) highest-ranked actors."""
    _require_top_capacity(rank)
    seeds = rank.top(graph.n // 10)
    return TopResult(_spread_fraction(graph, seeds, thresholds, comparison),
                     seeds)


def top10pct_values(graph: Graph, rank: RankVector, thresholds, *,
                    comparison: str | None = None,
                    cut: str = "ceil") -> TopResult:
    """Spread fraction from every actor holding a top-decile ranking value.

    The distinct values are sorted descending and the first
    ceil(|D| / 10) of them are kept (``cut="floor"`` switches to
    max(1, floor(|D| / 10))); all actors holding a kept value are seeded,
    ties included.
    """
    _require_top_capacity(rank)
    if cut not in ("ceil", "floor"):
        raise ValueError(f"cut must be 'ceil' or 'floor', got {cut!r}")
    q = rank.quantized()
    distinct = np.unique(q)[::-1]
    if cut == "ceil":
        keep = math.ceil(distinct.size / 10)
    else:
        keep = max(1, distinct.size // 10)
    cutoff = distinct[keep - 1]
    seeds = np.flatnonzero(q >= cutoff).astype(np.int64)
    return TopResult(_spread_fraction(graph, seeds, thresholds, comparison),
                     seeds)


@dataclass(frozen=True)
class MetricsRow:
    """One experiment report row (Nones where a metric was unavailable)."""

    network: str
    scheme: str
    param: str
    sigma: float | None = None
    distinct: int | None = None
    gini: float | None = None
    top10: float | None = None
    top10pct_actors: float | None = None
    top10pct_actors_size: int | None = None
    top10pct_values: float | None = None
    top10pct_values_size: int | None = None
    status: str = "ok"


def metrics_row(graph: Graph, rank: RankVector, thresholds, *, network: str,
                scheme: str, param: str, comparison: str | None = None,
                values_cut: str = "ceil") -> MetricsRow:
    """Assemble the full metrics row for one ranking.

    Distribution metrics always apply; the three top-set spreads need at
    least 10 nodes, and their absence is reported in the row status instead
    of aborting a batch.
    """
    stats = rank_stats(rank)
    g = gini(rank.values)
    if rank.n < 10:
        return MetricsRow(network=network, scheme=scheme, param=param,
                          sigma=stats.sigma, distinct=stats.distinct, gini=g,
                          status="error: top metrics require at least 10 nodes")
    t10 = top10(graph, rank, thresholds, comparison=comparison)
    ta = top10pct_actors(graph, rank, thresholds, comparison=comparison)
    tv = top10pct_values(graph, rank, thresholds, comparison=comparison,
                         cut=values_cut)
    return MetricsRow(network=network, scheme=scheme, param=param,
                      sigma=stats.sigma, distinct=stats.distinct, gini=g,
                      top10=t10.value,
                      top10pct_actors=ta.value, top10pct_actors_size=ta.size,
                      top10pct_values=tv.value, top10pct_values_size=tv.size)
