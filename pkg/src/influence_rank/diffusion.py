"""Threshold and cascade diffusion processes.

The linear threshold process runs in synchronous rounds: an inactive node
``i`` with at least one neighbor activates as soon as the fraction of its
neighborhood ``N(i)`` (in- and out-neighbors combined) that is already
active satisfies the activation comparison against its threshold. With the
default ``"ge"`` comparison a node with threshold 0 fires in round 1
regardless of its neighbors; under ``"gt"`` it needs one active contact.
Isolated nodes are never activated by influence, but they stay in every
denominator. The process is monotone and stops after at most n rounds.

The independent cascade process gives every newly activated node one
activation attempt per out-arc with success probability ``p``; attempt
order and the random streams are deterministic for a given seed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping

import numpy as np

from . import _kernels
from .graph import Graph
from .validation import check_probability, check_seed_indices, check_threshold_vector

COMPARISON_GE = "ge"
COMPARISON_GT = "gt"

#: Single switchable activation comparison used when a call does not pass
#: one explicitly: "ge" activates on fraction >= threshold, "gt" on >.
DEFAULT_COMPARISON = COMPARISON_GE


def resolve_comparison(comparison: str | None) -> str:
    cmp = DEFAULT_COMPARISON if comparison is None else comparison
    if cmp not in (COMPARISON_GE, COMPARISON_GT):
        raise ValueError(f"comparison must be 'ge' or 'gt', got {comparison!r}")
    return cmp


@dataclass(frozen=True)
class ThresholdAssignment:
    """Per-node activation thresholds plus provenance.

    ``values`` has one entry in [0, 1] per dense node index. ``scheme`` and
    ``params`` record how the assignment was generated, in enough detail to
    regenerate it deterministically.
    """

    values: np.ndarray
    scheme: str
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        arr = check_threshold_vector(self.values, len(self.values))
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def label(self) -> str:
        """Compact scheme label for report rows."""
        if self.scheme == "uniform":
            return f"uniform({self.params['theta']})"
        if self.scheme == "random_interval":
            lo = "(" if self.params.get("lo_exclusive", True) else "["
            return f"{lo}{self.params['low']},{self.params['high']}]"
        if self.scheme == "centrality":
            base = self.params.get("measure", "?")
            return f"1-{base}" if self.params.get("complement") else base
        return self.scheme


def as_assignment(graph: Graph, thresholds) -> ThresholdAssignment:
    """Coerce a float (uniform), array, or assignment to a ThresholdAssignment."""
    if isinstance(thresholds, ThresholdAssignment):
        if thresholds.n != graph.n:
            raise ValueError(f"assignment covers {thresholds.n} nodes, "
                             f"graph has {graph.n}")
        return thresholds
    if np.isscalar(thresholds):
        theta = check_probability(thresholds, "theta")
        return ThresholdAssignment(np.full(graph.n, theta), "uniform",
                                   {"theta": theta})
    values = check_threshold_vector(thresholds, graph.n)
    return ThresholdAssignment(values, "array", {})


def need_counts(theta: np.ndarray, degrees: np.ndarray, comparison: str):
    """Integer activation counts equivalent to the fractional rule.

    Returns the smallest count c with c/degree >= theta (or > theta under
    "gt"); the comparison is evaluated in float64 exactly as the displayed
    rule would be, so the counter-based engine and a naive fraction rescan
    agree bit-for-bit. A count above the degree means the node never fires.
    """
    deg = degrees.astype(np.float64)
    safe = np.maximum(deg, 1.0)
    t = theta * deg
    if comparison == COMPARISON_GE:
        ok = lambda c: (c / safe) >= theta  # noqa: E731
        cand = np.ceil(t)
    else:
        ok = lambda c: (c / safe) > theta  # noqa: E731
        cand = np.floor(t) + 1.0
    c = np.clip(cand, 0, None).astype(np.int64)
    # correct float rounding of the candidate against the exact rule
    while True:
        m = (c > 0) & ok(c - 1)
        if not m.any():
            break
        c[m] -= 1
    while True:
        m = ~ok(c) & (c <= degrees)
        if not m.any():
            break
        c[m] += 1
    c[degrees == 0] = 1
    return c


def zero_need_nodes(need: np.ndarray, degrees: np.ndarray) -> np.ndarray:
    """Nodes that fire spontaneously in round 1 (need 0, at least one neighbor)."""
    return np.flatnonzero((need == 0) & (degrees > 0)).astype(np.int64)


@dataclass(frozen=True)
class SpreadResult:
    """Outcome of a diffusion process.

    ``trace[0]`` is the seed set; ``trace[t]`` the nodes newly activated at
    step t (each sorted by dense index). ``steps == len(trace) - 1``.
    """

    n: int
    active: np.ndarray
    trace: tuple
    steps: int

    @property
    def size(self) -> int:
        return int(self.active.shape[0])

    @property
    def fraction(self) -> float:
        return self.active.shape[0] / self.n


def _result_from_engine(n, order, round_ends, sz, rounds) -> SpreadResult:
    trace = tuple(np.sort(order[round_ends[r]:round_ends[r + 1]].copy())
                  for r in range(rounds + 1))
    active = np.sort(order[:sz].copy())
    for arr in trace:
        arr.setflags(write=False)
    active.setflags(write=False)
    return SpreadResult(n=n, active=active, trace=trace, steps=rounds)


def lt_spread(graph: Graph, seeds, thresholds, *,
              comparison: str | None = None) -> SpreadResult:
    """Run the linear threshold cascade from a seed set.

    Parameters
    ----------
    graph : Graph
    seeds : collection of dense node indices (duplicates allowed)
    thresholds : ThresholdAssignment, float, or per-node array
    comparison : "ge" | "gt", optional
        Activation comparison; defaults to :data:`DEFAULT_COMPARISON`.
    """
    cmp = resolve_comparison(comparison)
    assign = as_assignment(graph, thresholds)
    seeds = check_seed_indices(seeds, graph.n)
    need = need_counts(assign.values, graph.degrees, cmp)
    zeros = zero_need_nodes(need, graph.degrees)
    n = graph.n
    active = np.zeros(n, np.bool_)
    counts = np.zeros(n, np.int64)
    counted = np.empty(n, np.int64)
    order = np.empty(n, np.int64)
    round_ends = np.empty(n + 2, np.int64)
    sz, rounds, _ = _kernels.lt_run(graph.union_indptr, graph.union_indices,
                                    need, zeros, seeds, active, counts,
                                    counted, order, round_ends)
    return _result_from_engine(n, order, round_ends, sz, rounds)


def ic_spread(graph: Graph, seeds, p, *, seed: int = 0) -> SpreadResult:
    """Run one independent cascade along out-arcs with arc probability ``p``."""
    p = check_probability(p)
    seeds = check_seed_indices(seeds, graph.n)
    n = graph.n
    active = np.zeros(n, np.bool_)
    order = np.empty(n, np.int64)
    round_ends = np.empty(n + 2, np.int64)
    # numba returns uint64 as a plain int; rewrap so ic_run types it unsigned
    state = np.uint64(
        _kernels._stream_seed(np.uint64(seed & 0xFFFFFFFFFFFFFFFF), 0, 0))
    sz, rounds, _ = _kernels.ic_run(graph.out_indptr, graph.out_indices,
                                    seeds, p, state, active, order, round_ends)
    return _result_from_engine(n, order, round_ends, sz, rounds)


def write_trace(result: SpreadResult, graph: Graph, fh) -> None:
    """Dump a spread trace: one line per step, the step index followed by
    the sorted newly-activated original identifiers, tab-separated."""
    ids = graph.original_ids
    for step, nodes in enumerate(result.trace):
        fields = [str(step)] + [str(ids[v]) for v in nodes]
        fh.write("\t".join(fields) + "\n")
