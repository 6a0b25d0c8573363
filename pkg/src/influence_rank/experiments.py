"""Experiment drivers and report serialization.

Each driver produces an :class:`ExperimentReport`: a list of metric rows
plus the tool version and a canonical configuration echo sufficient to
reproduce the output byte for byte. Wall-clock timings are logged and kept
on the in-memory rows but never written to the CSV, which must stay
identical across reruns and thread counts. A failing row is recorded with
an error status instead of aborting the batch.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .centrality import (RankVector, betweenness, fltr, fltr_sampled, icr,
                         ltr, pagerank)
from .graph import Graph
from .metrics import MetricsRow, gini, metrics_row, rank_stats, top10, \
    top10pct_actors, top10pct_values
from .thresholds import ThresholdSummary, from_centrality, summarize, uniform

log = logging.getLogger("influence_rank")

CSV_COLUMNS = ["network", "scheme", "param", "sigma", "distinct", "gini",
               "top10", "top10pA", "szA", "top10pV", "szV",
               "theta_min", "theta_max", "theta_mean", "theta_std", "status"]


@dataclass(frozen=True)
class ExperimentRow:
    metrics: MetricsRow
    theta_summary: ThresholdSummary | None = None
    wall_clock_s: float = 0.0


@dataclass(frozen=True)
class ExperimentReport:
    config: dict
    rows: list = field(default_factory=list)
    version: str = __version__


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def write_report_csv(report: ExperimentReport, fh) -> None:
    """Write the report: '#' header lines (version, canonical config echo)
    followed by one CSV row per experiment."""
    fh.write(f"# influence-rank {report.version}\n")
    echo = json.dumps(report.config, sort_keys=True, separators=(",", ":"))
    fh.write(f"# config: {echo}\n")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        m = row.metrics
        s = row.theta_summary
        writer.writerow([
            m.network, m.scheme, m.param,
            _fmt(m.sigma), _fmt(m.distinct), _fmt(m.gini), _fmt(m.top10),
            _fmt(m.top10pct_actors), _fmt(m.top10pct_actors_size),
            _fmt(m.top10pct_values), _fmt(m.top10pct_values_size),
            _fmt(s.min if s else None), _fmt(s.max if s else None),
            _fmt(s.mean if s else None), _fmt(s.std if s else None),
            m.status,
        ])


def report_csv_bytes(report: ExperimentReport) -> bytes:
    buf = io.StringIO()
    write_report_csv(report, buf)
    return buf.getvalue().encode("utf-8")


def _error_row(network, scheme, param, exc) -> ExperimentRow:
    log.error("row %s/%s/%s failed: %s", network, scheme, param, exc)
    return ExperimentRow(MetricsRow(network=network, scheme=scheme,
                                    param=param, status=f"error: {exc}"))


def run_exp_uniform(graph: Graph, thetas, *, network: str,
                    comparison: str | None = None,
                    values_cut: str = "ceil") -> list[ExperimentRow]:
    """FLTR distribution metrics for each uniform threshold in ``thetas``."""
    rows = []
    for theta in thetas:
        t0 = time.perf_counter()
        param = _fmt(float(theta))
        try:
            assign = uniform(graph, theta)
            rank = fltr(graph, assign, comparison=comparison)
            m = metrics_row(graph, rank, assign, network=network,
                            scheme="uniform", param=param,
                            comparison=comparison, values_cut=values_cut)
            row = ExperimentRow(m, summarize(assign),
                                time.perf_counter() - t0)
        except Exception as exc:  # keep the batch alive
            row = _error_row(network, "uniform", param, exc)
        rows.append(row)
        log.info("uniform theta=%s done in %.2fs", param, row.wall_clock_s)
    return rows


def run_exp_random(graph: Graph, low: float, high: float, *, runs: int,
                   seed: int, network: str, lo_exclusive: bool = True,
                   comparison: str | None = None, top_on_mean: bool = False,
                   values_cut: str = "ceil") -> list[ExperimentRow]:
    """FLTR metrics under ``runs`` random threshold draws from an interval.

    Sigma, distinct count and Gini are computed on the run-averaged rank
    vector. By default each top-set metric is computed per run, from that
    run's ranking and thresholds, and averaged; the reported seed-set sizes
    come from the final run. With ``top_on_mean`` the top metrics are
    computed once, seeding from the averaged ranking and spreading under
    the final run's threshold draw.
    """
    t0 = time.perf_counter()
    bracket = "(" if lo_exclusive else "["
    param = f"{bracket}{_fmt(low)},{_fmt(high)}]"
    per_run_rows: list = []
    last_assign: list = [None]

    def collect(r, rank_r, assign_r):
        last_assign[0] = assign_r
        if graph.n >= 10:
            t = top10(graph, rank_r, assign_r, comparison=comparison)
            a = top10pct_actors(graph, rank_r, assign_r, comparison=comparison)
            v = top10pct_values(graph, rank_r, assign_r, comparison=comparison,
                                cut=values_cut)
            per_run_rows.append((t, a, v))

    try:
        mean_rank = fltr_sampled(graph, low, high, runs=runs, seed=seed,
                                 lo_exclusive=lo_exclusive,
                                 comparison=comparison, per_run=collect)
        stats = rank_stats(mean_rank)
        g = gini(mean_rank.values)
        if graph.n < 10:
            m = MetricsRow(network=network, scheme="random", param=param,
                           sigma=stats.sigma, distinct=stats.distinct, gini=g,
                           status="error: top metrics require at least 10 nodes")
        elif top_on_mean:
            t = top10(graph, mean_rank, last_assign[0], comparison=comparison)
            a = top10pct_actors(graph, mean_rank, last_assign[0],
                                comparison=comparison)
            v = top10pct_values(graph, mean_rank, last_assign[0],
                                comparison=comparison, cut=values_cut)
            m = MetricsRow(network=network, scheme="random", param=param,
                           sigma=stats.sigma, distinct=stats.distinct, gini=g,
                           top10=t.value, top10pct_actors=a.value,
                           top10pct_actors_size=a.size,
                           top10pct_values=v.value,
                           top10pct_values_size=v.size)
        else:
            t_vals = [t.value for t, _, _ in per_run_rows]
            a_vals = [a.value for _, a, _ in per_run_rows]
            v_vals = [v.value for _, _, v in per_run_rows]
            t_last, a_last, v_last = per_run_rows[-1]
            m = MetricsRow(network=network, scheme="random", param=param,
                           sigma=stats.sigma, distinct=stats.distinct, gini=g,
                           top10=float(np.mean(t_vals)),
                           top10pct_actors=float(np.mean(a_vals)),
                           top10pct_actors_size=a_last.size,
                           top10pct_values=float(np.mean(v_vals)),
                           top10pct_values_size=v_last.size)
        row = ExperimentRow(m, summarize(last_assign[0]),
                            time.perf_counter() - t0)
    except Exception as exc:
        row = _error_row(network, "random", param, exc)
    log.info("random %s runs=%d done in %.2fs", param, runs, row.wall_clock_s)
    return [row]


def base_rank(graph: Graph, measure: str, *, seed: int = 0,
              comparison: str | None = None, icr_p: float = 0.01,
              icr_runs: int = 100) -> RankVector:
    """Compute the base centrality used to derive thresholds."""
    if measure == "Btwn":
        return betweenness(graph)
    if measure == "PgR":
        return pagerank(graph)
    if measure == "ICR":
        return icr(graph, p=icr_p, runs=icr_runs, seed=seed)
    if measure == "LTR":
        return ltr(graph, 0.5, comparison=comparison)
    if measure == "FLTR":
        # the FLTR-derived scheme bootstraps from the uniform 0.5 baseline
        return fltr(graph, 0.5, comparison=comparison)
    raise ValueError(f"unknown measure {measure!r}")


def run_exp_centrality(graph: Graph, measure: str, *, network: str,
                       complement: bool = False, seed: int = 0,
                       comparison: str | None = None,
                       icr_p: float = 0.01, icr_runs: int = 100,
                       values_cut: str = "ceil") -> list[ExperimentRow]:
    """FLTR metrics with thresholds copied from a centrality ranking."""
    t0 = time.perf_counter()
    param = f"1-{measure}" if complement else measure
    try:
        base = base_rank(graph, measure, seed=seed, comparison=comparison,
                         icr_p=icr_p, icr_runs=icr_runs)
        assign = from_centrality(graph, base, complement=complement)
        rank = fltr(graph, assign, comparison=comparison)
        m = metrics_row(graph, rank, assign, network=network,
                        scheme="centrality", param=param,
                        comparison=comparison, values_cut=values_cut)
        row = ExperimentRow(m, summarize(assign), time.perf_counter() - t0)
    except Exception as exc:
        row = _error_row(network, "centrality", param, exc)
    log.info("centrality %s done in %.2fs", param, row.wall_clock_s)
    return [row]
