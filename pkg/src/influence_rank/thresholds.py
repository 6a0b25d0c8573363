"""Threshold assignment schemes and their summaries.

Three generators cover the experiment families: a uniform constant, i.i.d.
draws from a sub-interval of [0, 1], and thresholds copied from (or
complementary to) a centrality ranking. Assignments carry provenance and
can be exported to / restored from CSV keyed by original identifiers.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .centrality import RankVector
from .diffusion import ThresholdAssignment
from .graph import Graph
from .validation import InputDataError, check_fraction, check_threshold_vector


def uniform(graph: Graph, theta: float) -> ThresholdAssignment:
    """Assign the same threshold to every node."""
    theta = check_fraction(theta, "theta")
    return ThresholdAssignment(np.full(graph.n, theta), "uniform",
                               {"theta": theta})


def random_interval(graph: Graph, low: float, high: float, *,
                    lo_exclusive: bool = True, seed: int | None = None,
                    rng: np.random.Generator | None = None,
                    provenance: dict | None = None) -> ThresholdAssignment:
    """Draw i.i.d. uniform thresholds from the interval [low, high).

    With ``lo_exclusive`` (the default) draws equal to ``low`` are resampled,
    yielding the interval (low, high]-style draws the sweep experiments use;
    the exact upper endpoint has probability zero either way. Pass either a
    seed or an already-constructed generator.
    """
    low = check_fraction(low, "low")
    high = check_fraction(high, "high")
    if not low < high:
        raise ValueError(f"interval must satisfy low < high, got [{low}, {high}]")
    if rng is None:
        rng = np.random.default_rng(seed)
    values = rng.uniform(low, high, graph.n)
    if lo_exclusive:
        while True:
            hits = values == low
            if not hits.any():
                break
            values[hits] = rng.uniform(low, high, int(hits.sum()))
    params = {"low": low, "high": high, "lo_exclusive": lo_exclusive,
              "seed": seed}
    if provenance:
        params.update(provenance)
    return ThresholdAssignment(values, "random_interval", params)


def from_centrality(graph: Graph, rank: RankVector, *,
                    complement: bool = False) -> ThresholdAssignment:
    """Copy a centrality ranking into thresholds, optionally as 1 - value.

    All measures produce values in [0, 1], so the copy is a valid
    assignment: influential nodes become hard (or, complemented, easy) to
    activate.
    """
    if rank.n != graph.n:
        raise ValueError(f"rank covers {rank.n} nodes, graph has {graph.n}")
    values = 1.0 - rank.values if complement else rank.values.copy()
    return ThresholdAssignment(values, "centrality",
                               {"measure": rank.measure,
                                "complement": bool(complement),
                                "base_params": dict(rank.params)})


@dataclass(frozen=True)
class ThresholdSummary:
    min: float
    max: float
    mean: float
    std: float


def summarize(assignment: ThresholdAssignment) -> ThresholdSummary:
    """Minimum, maximum, mean and population standard deviation."""
    v = assignment.values
    return ThresholdSummary(min=float(v.min()), max=float(v.max()),
                            mean=float(v.mean()), std=float(v.std()))


def write_thresholds_csv(assignment: ThresholdAssignment, graph: Graph,
                         fh) -> None:
    """Export per-node thresholds as ``original_id,theta`` rows."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["original_id", "theta"])
    ids = graph.original_ids
    for i in range(graph.n):
        writer.writerow([int(ids[i]), repr(float(assignment.values[i]))])


def read_thresholds_csv(graph: Graph, fh) -> ThresholdAssignment:
    """Restore an assignment written by :func:`write_thresholds_csv`."""
    reader = csv.reader(fh)
    header = next(reader, None)
    if header != ["original_id", "theta"]:
        raise InputDataError("threshold CSV must start with 'original_id,theta'")
    values = np.full(graph.n, np.nan)
    for row in reader:
        if not row:
            continue
        if len(row) != 2:
            raise InputDataError(f"threshold CSV row must have 2 fields: {row!r}")
        try:
            idx = graph.index_of(int(row[0]))
            values[idx] = float(row[1])
        except (ValueError, KeyError) as exc:
            raise InputDataError(f"bad threshold CSV row {row!r}: {exc}") from exc
    if np.isnan(values).any():
        missing = int(np.isnan(values).sum())
        raise InputDataError(f"threshold CSV misses {missing} node(s)")
    try:
        values = check_threshold_vector(values, graph.n)
    except ValueError as exc:
        raise InputDataError(f"threshold CSV: {exc}") from exc
    return ThresholdAssignment(values, "file", {})
