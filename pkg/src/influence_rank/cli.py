"""Command-line interface.

Subcommands::

    influence-rank stats          structural summary row for a network
    influence-rank rank           export one centrality ranking as CSV
    influence-rank exp-uniform    FLTR metrics for a list of uniform thresholds
    influence-rank exp-random     FLTR metrics under random threshold draws
    influence-rank exp-centrality FLTR metrics with centrality-derived thresholds

Exit codes: 0 on success, 1 on usage errors, 2 on data errors. Options can
also be supplied through a JSON config file (``--config``); explicit flags
override config values. Progress goes to stderr; data goes only to the
output CSV, whose bytes are identical for any ``--threads`` value.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .centrality import MEASURES, write_rank_csv
from .diffusion import resolve_comparison
from .experiments import (ExperimentReport, run_exp_centrality,
                          run_exp_random, run_exp_uniform, write_report_csv)
from .graph import load_edge_list
from .stats import graph_stats
from .validation import InputDataError

log = logging.getLogger("influence_rank")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--graph", required=True, help="edge list path (.gz ok)")
    sub.add_argument("--directed", action="store_true",
                     help="treat the edge list as directed arcs")
    sub.add_argument("--weighted", action="store_true",
                     help="read a third numeric column as arc weight")
    sub.add_argument("--seed", type=int, default=0,
                     help="master random seed (default 0)")
    sub.add_argument("--out", default=None,
                     help="output CSV path (default stdout)")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker threads for per-node rank loops (default 1; "
                          "results are identical for any value)")
    sub.add_argument("--config", default=None,
                     help="JSON file with option defaults; flags override")
    sub.add_argument("--comparison", choices=["ge", "gt"], default=None,
                     help="threshold activation comparison (default ge)")
    sub.add_argument("--network", default=None,
                     help="network label for report rows (default: file stem)")
    sub.add_argument("--quiet", action="store_true",
                     help="suppress progress logging")


def build_parser() -> tuple[_Parser, dict[str, argparse.ArgumentParser]]:
    parser = _Parser(prog="influence-rank",
                     description="Influence-spread rankings and experiments")
    parser.add_argument("--version", action="version",
                        version=f"influence-rank {__version__}")
    subs = parser.add_subparsers(dest="command", metavar="command",
                                 parser_class=_Parser)
    sub_map: dict[str, argparse.ArgumentParser] = {}

    p = subs.add_parser("stats", help="structural summary CSV")
    sub_map["stats"] = p
    _add_common(p)

    p = subs.add_parser("rank", help="export a centrality ranking as CSV")
    sub_map["rank"] = p
    _add_common(p)
    p.add_argument("--measure", default=None,
                   help=f"one of {', '.join(MEASURES)}")
    p.add_argument("--theta", default="0.5",
                   help="uniform threshold for LTR/FLTR (default 0.5)")
    p.add_argument("--p", type=float, default=0.01,
                   help="arc probability for ICR (default 0.01)")
    p.add_argument("--runs", type=int, default=100,
                   help="cascade repetitions for ICR (default 100)")

    p = subs.add_parser("exp-uniform", help="uniform threshold sweep")
    sub_map["exp-uniform"] = p
    _add_common(p)
    p.add_argument("--theta", default=None,
                   help="comma-separated thresholds, e.g. 0.25,0.5,0.75,1.0")
    p.add_argument("--values-cut", choices=["ceil", "floor"], default="ceil",
                   help="rounding of the distinct-values decile (default ceil)")

    p = subs.add_parser("exp-random", help="random threshold draws")
    sub_map["exp-random"] = p
    _add_common(p)
    p.add_argument("--interval", default=None,
                   help="draw interval as LO,HI, e.g. 0,1 or 0,0.5")
    p.add_argument("--lo-exclusive", dest="lo_exclusive", action="store_true",
                   default=None, help="resample draws equal to LO (default)")
    p.add_argument("--lo-inclusive", dest="lo_exclusive", action="store_false",
                   help="keep draws equal to LO")
    p.add_argument("--runs", type=int, default=100,
                   help="number of threshold draws (default 100)")
    p.add_argument("--top-on-mean", action="store_true",
                   help="compute top metrics once on the averaged ranking "
                        "instead of averaging per-run values")
    p.add_argument("--values-cut", choices=["ceil", "floor"], default="ceil")

    p = subs.add_parser("exp-centrality",
                        help="thresholds copied from a centrality measure")
    sub_map["exp-centrality"] = p
    _add_common(p)
    p.add_argument("--measure", default=None,
                   help=f"one of {', '.join(MEASURES)}")
    p.add_argument("--complement", action="store_true",
                   help="use 1 - value instead of the value")
    p.add_argument("--values-cut", choices=["ceil", "floor"], default="ceil")

    return parser, sub_map


def _apply_config(sub_map: dict, argv: list[str]) -> None:
    """Load --config JSON (if present) as defaults on the subcommand parser."""
    if "--config" not in argv:
        return
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise UsageError("--config requires a path")
    path = argv[idx + 1]
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise InputDataError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputDataError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise InputDataError(f"config {path} must hold a JSON object")
    if not argv or argv[0] not in sub_map:
        raise UsageError("a subcommand is required before --config is applied")
    sub = sub_map[argv[0]]
    dests = {a.dest for a in sub._actions}
    defaults = {}
    for key, value in cfg.items():
        dest = key.replace("-", "_")
        if dest not in dests:
            raise UsageError(f"unknown config key {key!r}")
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        defaults[dest] = value
    sub.set_defaults(**defaults)


def _set_threads(threads: int) -> None:
    if threads < 1:
        raise UsageError("--threads must be at least 1")
    import numba

    available = numba.config.NUMBA_NUM_THREADS
    effective = min(threads, available)
    if effective != threads:
        log.info("clamping --threads %d to %d available numba threads",
                 threads, effective)
    numba.set_num_threads(effective)


def _parse_theta_list(text: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise UsageError(f"--theta expects comma-separated numbers, got {text!r}")
    if not values:
        raise UsageError("--theta expects at least one value")
    return values


def _parse_interval(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--interval expects LO,HI, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise UsageError(f"--interval expects numbers, got {text!r}")


def _network_label(args) -> str:
    if args.network:
        return args.network
    name = Path(args.graph).name
    dot = name.find(".")
    return name[:dot] if dot > 0 else name


def _load_graph(args):
    log.info("loading %s (directed=%s, weighted=%s)",
             args.graph, args.directed, args.weighted)
    return load_edge_list(args.graph, directed=args.directed,
                          weighted=args.weighted)


def _open_out(args):
    if args.out is None:
        return sys.stdout, False
    return open(args.out, "w", encoding="utf-8", newline=""), True


def _base_echo(args, command: str) -> dict:
    return {"command": command, "graph": str(args.graph),
            "directed": bool(args.directed), "weighted": bool(args.weighted),
            "network": _network_label(args)}


def _cmd_stats(args) -> int:
    graph = _load_graph(args)
    stats = graph_stats(graph)
    echo = _base_echo(args, "stats")
    fh, close = _open_out(args)
    try:
        fh.write(f"# influence-rank {__version__}\n")
        fh.write("# config: "
                 + json.dumps(echo, sort_keys=True, separators=(",", ":"))
                 + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["network", "n", "m", "directed", "weighted", "acc",
                         "diameter", "main_core"])
        writer.writerow([
            echo["network"], stats.n, stats.m,
            "directed" if stats.directed else "undirected",
            "weighted" if stats.weighted else "unweighted",
            repr(float(stats.acc)), stats.diameter_display(),
            stats.main_core_size,
        ])
    finally:
        if close:
            fh.close()
    return 0


def _cmd_rank(args) -> int:
    if args.measure not in MEASURES:
        raise UsageError(f"--measure must be one of {', '.join(MEASURES)}, "
                         f"got {args.measure!r}")
    comparison = resolve_comparison(args.comparison)
    graph = _load_graph(args)
    from . import centrality

    if args.measure == "Btwn":
        rank = centrality.betweenness(graph)
    elif args.measure == "PgR":
        rank = centrality.pagerank(graph)
    elif args.measure == "ICR":
        rank = centrality.icr(graph, p=args.p, runs=args.runs, seed=args.seed)
    else:
        thetas = _parse_theta_list(args.theta)
        if len(thetas) != 1:
            raise UsageError("rank expects a single --theta value")
        fn = centrality.ltr if args.measure == "LTR" else centrality.fltr
        rank = fn(graph, thetas[0], comparison=comparison)
    fh, close = _open_out(args)
    try:
        write_rank_csv(rank, graph, fh)
    finally:
        if close:
            fh.close()
    return 0


def _write_report(args, echo: dict, rows) -> None:
    report = ExperimentReport(config=echo, rows=rows)
    fh, close = _open_out(args)
    try:
        write_report_csv(report, fh)
    finally:
        if close:
            fh.close()


def _cmd_exp_uniform(args) -> int:
    if not args.theta:
        raise UsageError("exp-uniform requires --theta")
    thetas = _parse_theta_list(args.theta)
    comparison = resolve_comparison(args.comparison)
    graph = _load_graph(args)
    echo = _base_echo(args, "exp-uniform")
    echo.update({"theta": thetas, "comparison": comparison,
                 "values_cut": args.values_cut})
    rows = run_exp_uniform(graph, thetas, network=echo["network"],
                           comparison=comparison, values_cut=args.values_cut)
    _write_report(args, echo, rows)
    return 0


def _cmd_exp_random(args) -> int:
    if not args.interval:
        raise UsageError("exp-random requires --interval LO,HI")
    low, high = _parse_interval(args.interval)
    lo_exclusive = True if args.lo_exclusive is None else args.lo_exclusive
    comparison = resolve_comparison(args.comparison)
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    graph = _load_graph(args)
    echo = _base_echo(args, "exp-random")
    echo.update({"low": low, "high": high, "lo_exclusive": lo_exclusive,
                 "runs": args.runs, "seed": args.seed,
                 "top_on_mean": bool(args.top_on_mean),
                 "comparison": comparison, "values_cut": args.values_cut})
    rows = run_exp_random(graph, low, high, runs=args.runs, seed=args.seed,
                          network=echo["network"], lo_exclusive=lo_exclusive,
                          comparison=comparison,
                          top_on_mean=bool(args.top_on_mean),
                          values_cut=args.values_cut)
    _write_report(args, echo, rows)
    return 0


def _cmd_exp_centrality(args) -> int:
    if args.measure not in MEASURES:
        raise UsageError(f"--measure must be one of {', '.join(MEASURES)}, "
                         f"got {args.measure!r}")
    comparison = resolve_comparison(args.comparison)
    graph = _load_graph(args)
    echo = _base_echo(args, "exp-centrality")
    echo.update({"measure": args.measure, "complement": bool(args.complement),
                 "seed": args.seed, "comparison": comparison,
                 "values_cut": args.values_cut})
    rows = run_exp_centrality(graph, args.measure, network=echo["network"],
                              complement=bool(args.complement),
                              seed=args.seed, comparison=comparison,
                              values_cut=args.values_cut)
    _write_report(args, echo, rows)
    return 0


_COMMANDS = {
    "stats": _cmd_stats,
    "rank": _cmd_rank,
    "exp-uniform": _cmd_exp_uniform,
    "exp-random": _cmd_exp_random,
    "exp-centrality": _cmd_exp_centrality,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, sub_map = build_parser()
    try:
        _apply_config(sub_map, argv)
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required "
                             f"(one of {', '.join(_COMMANDS)})")
        logging.basicConfig(
            stream=sys.stderr, format="%(levelname)s %(message)s",
            level=logging.WARNING if args.quiet else logging.INFO,
            force=True)
        _set_threads(args.threads)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"influence-rank: error: {exc}", file=sys.stderr)
        return 1
    except InputDataError as exc:
        print(f"influence-rank: data error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"influence-rank: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"influence-rank: data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
