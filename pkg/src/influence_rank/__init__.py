"""Influence-spread centrality rankings on directed and undirected networks.

The package computes how far influence cascades travel under the linear
threshold and independent cascade processes, ranks nodes by their spread,
derives threshold assignments (uniform, random, centrality-based), and
measures how concentrated the resulting rankings are.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .diffusion import (COMPARISON_GE, COMPARISON_GT, DEFAULT_COMPARISON,
                        SpreadResult, ThresholdAssignment, ic_spread,
                        lt_spread, write_trace)
from .graph import Graph, load_edge_list
from .stats import GraphStats, clustering, diameter, graph_stats, main_core
from .centrality import (ESTIMATORS, MEASURES, BetweennessRank,
                         ForwardLinearThresholdRank, IndependentCascadeRank,
                         LinearThresholdRank, PageRankScore, RankVector,
                         SampledForwardRank, betweenness, fltr, fltr_sampled,
                         icr, ltr, pagerank, write_rank_csv)
from .thresholds import (ThresholdSummary, from_centrality, random_interval,
                         read_thresholds_csv, summarize, uniform,
                         write_thresholds_csv)
from .metrics import (MetricsRow, RankStats, TopResult, gini, metrics_row,
                      rank_stats, top10, top10pct_actors, top10pct_values)
from .experiments import (CSV_COLUMNS, ExperimentReport, ExperimentRow,
                          base_rank, report_csv_bytes, run_exp_centrality,
                          run_exp_random, run_exp_uniform, write_report_csv)
from .validation import InputDataError

__all__ = [
    "__version__",
    "Graph", "load_edge_list", "InputDataError",
    "GraphStats", "clustering", "diameter", "graph_stats", "main_core",
    "SpreadResult", "ThresholdAssignment", "lt_spread", "ic_spread",
    "write_trace", "COMPARISON_GE", "COMPARISON_GT", "DEFAULT_COMPARISON",
    "RankVector", "MEASURES", "ESTIMATORS", "betweenness", "pagerank", "icr",
    "ltr", "fltr", "fltr_sampled", "write_rank_csv",
    "BetweennessRank", "PageRankScore", "IndependentCascadeRank",
    "LinearThresholdRank", "ForwardLinearThresholdRank", "SampledForwardRank",
    "ThresholdSummary", "uniform", "random_interval", "from_centrality",
    "summarize", "write_thresholds_csv", "read_thresholds_csv",
    "MetricsRow", "RankStats", "TopResult", "gini", "rank_stats",
    "top10", "top10pct_actors", "top10pct_values", "metrics_row",
    "CSV_COLUMNS", "ExperimentReport", "ExperimentRow", "base_rank",
    "report_csv_bytes", "run_exp_uniform", "run_exp_random",
    "run_exp_centrality", "write_report_csv",
]
