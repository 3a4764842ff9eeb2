"""Command-line entry point: ``commqual {prep,detect,quality,compare,pipeline}``.

Exit status is 0 on success, 1 on a usage error and 2 on a data error.
Diagnostics go to stderr; CSV goes to ``--out`` or stdout.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

from . import __version__
from .compare import COMPARISON_METRICS, compare
from .cover import load_cover, read_communities, write_cover
from .detect import ALGORITHMS, DetectionSpec, run_detection
from .exceptions import CommQualError
from .graph import induce_ground_truth_subgraph, load_edge_list, write_edge_list
from .pipeline import _csv_text, fmt, read_config, run_pipeline
from .quality import SamplingPlan, evaluate, resolve_metrics

DEFAULT_SEED = 7

log = logging.getLogger("commqual.cli")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_prep(args) -> int:
    g = load_edge_list(args.graph, symmetrize=not args.no_symmetrize)
    g2, truth = induce_ground_truth_subgraph(g, read_communities(args.truth))
    write_edge_list(g2, args.out_graph)
    write_cover(truth, args.out_truth, g2)
    print(f"kept {g2.n} of {g.n} nodes, {g2.m} of {g.m} edges, {len(truth)} communities", file=sys.stderr)
    return 0


def cmd_detect(args) -> int:
    try:
        spec = DetectionSpec(args.algorithm, args.seed, args.k, args.max_sweeps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    g = load_edge_list(args.graph)
    cover = run_detection(g, spec)
    if args.out in (None, "-"):
        sys.stdout.write("\n".join(" ".join(g.label(v) for v in c) for c in cover.clusters) + "\n")
    else:
        write_cover(cover, args.out, g)
    print(f"{spec.label}: {len(cover)} clusters", file=sys.stderr)
    return 0


def _plan(args) -> SamplingPlan | None:
    if args.samples is None:
        return None
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    eps = args.epsilon
    if eps is None:
        # tightest epsilon the sample budget guarantees at confidence p
        eps = math.sqrt(math.log(2.0 / args.p) / (2.0 * args.samples))
    try:
        return SamplingPlan(args.samples, eps, args.p, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_quality(args) -> int:
    try:
        metrics = resolve_metrics(args.metrics)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    plan = _plan(args)
    g = load_edge_list(args.graph)
    rows = []
    for path in args.clusters:
        cover = load_cover(path, g)
        cid = Path(path).stem
        for s in evaluate(g, cover, metrics, plan):
            rows.append([cid, s.metric_name, fmt(s.value), s.mode, fmt(s.sample_count), fmt(s.seed)])
    _emit(_csv_text(["clustering_id", "metric_name", "value", "mode", "sample_count", "seed"], rows), args.out)
    return 0


def cmd_compare(args) -> int:
    names = [s.strip() for s in args.metrics.split(",") if s.strip()]
    names = list(COMPARISON_METRICS) if names == ["all"] else ["onmi" if s == "nmi" else s for s in names]
    bad = [s for s in names if s not in COMPARISON_METRICS]
    if bad:
        raise UsageError(f"unknown comparison metric(s): {', '.join(bad)}")
    g = load_edge_list(args.graph)
    truth = load_cover(args.truth, g)
    rows = []
    for path in args.clusters:
        cover = load_cover(path, g)
        for m in names:
            r = compare(cover, truth, m)
            rows.append([Path(path).stem, m, fmt(r.value), fmt(r.precision), fmt(r.recall)])
    _emit(_csv_text(["clustering_id", "metric", "value", "precision", "recall"], rows), args.out)
    return 0


def cmd_pipeline(args) -> int:
    config = read_config(args.config)
    if args.jobs is not None and args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    out = args.out_dir or config.output_dir
    if not out:
        raise UsageError("no output directory: pass --out-dir or set output_dir in [run]")
    bundle = run_pipeline(config, output_dir=out, jobs=args.jobs)
    for name in sorted(bundle.files):
        print(f"wrote {bundle.files[name]}", file=sys.stderr)
    if not bundle.reports:
        print("every graph failed; see manifest.txt", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="commqual", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"commqual {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("prep", help="keep the largest connected component of ground-truth nodes")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--truth", required=True, help="community file, one community per line")
    p.add_argument("--out-graph", required=True)
    p.add_argument("--out-truth", required=True)
    p.add_argument("--no-symmetrize", action="store_true", help="reject repeated or reciprocal edges")
    p.set_defaults(func=cmd_prep)

    p = sub.add_parser("detect", help="run one community detection algorithm")
    p.add_argument("--graph", required=True)
    p.add_argument("--algorithm", required=True, help=f"one of {', '.join(ALGORITHMS)} (aliases: lp, kcore)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--k", type=int, default=3, help="core order for k_core")
    p.add_argument("--max-sweeps", type=int, default=100, help="label propagation sweep cap")
    p.add_argument("--out", help="community file to write (default: stdout)")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("quality", help="score clusterings with quality functions")
    p.add_argument("--graph", required=True)
    p.add_argument("--clusters", required=True, action="append", help="community file (repeatable)")
    p.add_argument("--metrics", default="all", help="comma-separated names or 'all'")
    p.add_argument("--samples", type=int, help="estimate triangle-based vertex metrics from this many nodes")
    p.add_argument("--epsilon", type=float, help="error bound for --samples (default: what the budget guarantees)")
    p.add_argument("--p", type=float, default=0.05, help="failure probability for --samples")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out")
    p.set_defaults(func=cmd_quality)

    p = sub.add_parser("compare", help="compare clusterings with a reference clustering")
    p.add_argument("--graph", required=True)
    p.add_argument("--clusters", required=True, action="append")
    p.add_argument("--truth", required=True)
    p.add_argument("--metrics", default="all", help="fb3, onmi or all")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("pipeline", help="run the full context-identification pipeline")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir")
    p.add_argument("--jobs", type=int, help="graphs processed in parallel")
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"commqual {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (CommQualError, ValueError, OSError) as exc:
        print(f"commqual {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
