"""Context identification: detect, score, rank against ground truth, correlate.

For every graph: run the detection algorithms (plus imported clusterings),
score each clustering with the quality functions, compare each clustering to
the ground truth under both comparison metrics, and correlate the ranking the
ground truth induces with the ranking every quality function induces. Across
graphs, correlate those per-graph correlation vectors pairwise; graphs whose
vectors agree form a context.
"""

from __future__ import annotations

import configparser
import csv
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .compare import COMPARISON_METRICS, ComparisonResult, compare
from .cover import Cover, read_communities
from .datasets import BUILTIN, football_paths
from .detect import DetectionSpec, import_clustering, run_detection
from .exceptions import (CommQualError, ConfigError, PipelineError,
                         UndefinedCorrelationError)
from .graph import Graph, induce_ground_truth_subgraph, load_edge_list
from .quality import METRICS, QualityScore, SamplingPlan, evaluate
from .ranking import spearman

logger = logging.getLogger(__name__)

TRUTH_ID = "ground_truth"


def fmt(x) -> str:
    """Locale-independent CSV number: 12 significant digits, blank for missing."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if np.isnan(x):
        return ""
    return f"{x:.12g}"


# --------------------------------------------------------------------------
# step 1: clusterings

def run_detections(g: Graph, specs: Sequence[DetectionSpec], imports: Sequence = (),
                   min_clusterings: int = 3) -> list[Cover]:
    """Run every detection spec, then load every imported clustering.

    Covers keep their provenance label. Identical covers are kept and logged.
    """
    covers = []
    for spec in specs:
        cover = run_detection(g, spec)
        cover.provenance = spec.label
        covers.append(cover)
    for path in imports:
        covers.append(import_clustering(path, g))
    if len(covers) < min_clusterings:
        raise PipelineError(f"{len(covers)} clustering(s); rank correlation needs at least {min_clusterings}")
    for i, a in enumerate(covers):
        for b in covers[:i]:
            if a == b:
                logger.warning("clustering %s is identical to %s", a.provenance, b.provenance)
                break
    return covers


def clustering_ids(covers: Sequence[Cover]) -> list[str]:
    """Unique ids from provenance labels; repeats get a ``#2``, ``#3`` suffix."""
    ids = []
    seen: dict[str, int] = {}
    for i, c in enumerate(covers):
        base = c.provenance or f"clustering{i}"
        seen[base] = seen.get(base, 0) + 1
        ids.append(base if seen[base] == 1 else f"{base}#{seen[base]}")
    return ids


def duplicate_pairs(covers: Sequence[Cover], ids: Sequence[str]) -> list[tuple[str, str]]:
    out = []
    for i, a in enumerate(covers):
        for j in range(i):
            if a == covers[j]:
                out.append((ids[i], ids[j]))
                break
    return out


# --------------------------------------------------------------------------
# step 2: quality scores

@dataclass
class ScoreMatrix:
    clustering_ids: list[str]
    metrics: tuple[str, ...]
    scores: list[list[QualityScore]]

    @property
    def values(self) -> np.ndarray:
        return np.array([[s.value for s in row] for row in self.scores], dtype=float)

    def column(self, metric: str) -> np.ndarray:
        j = self.metrics.index(metric)
        return np.array([row[j].value for row in self.scores], dtype=float)


def score_matrix(g: Graph, covers: Sequence[Cover], ids: Sequence[str], metrics=METRICS,
                 plan: SamplingPlan | None = None) -> ScoreMatrix:
    rows = [evaluate(g, c, metrics, plan) for c in covers]
    names = tuple(s.metric_name for s in rows[0]) if rows else tuple(metrics)
    return ScoreMatrix(list(ids), names, rows)


# --------------------------------------------------------------------------
# step 3: gold standard

@dataclass
class GoldVector:
    metric: str
    clustering_ids: list[str]
    results: list[ComparisonResult]

    @property
    def values(self) -> np.ndarray:
        return np.array([r.value for r in self.results], dtype=float)

    def __getitem__(self, clustering_id: str) -> float:
        return self.results[self.clustering_ids.index(clustering_id)].value


def gold_standard(truth: Cover, clusterings: Sequence[Cover], metric: str,
                  ids: Sequence[str] | None = None) -> GoldVector:
    if ids is None:
        ids = clustering_ids(clusterings)
    return GoldVector(metric, list(ids), [compare(c, truth, metric) for c in clusterings])


# --------------------------------------------------------------------------
# step 4: per-graph correlation of gold ranking with quality rankings

@dataclass
class QualityCorrelationRow:
    graph_id: str
    comparison_metric: str
    columns: tuple[str, ...]
    coefficients: dict[str, float | None]

    def vector(self, exclude: Sequence[str] = ()) -> list[float | None]:
        return [self.coefficients[c] for c in self.columns if c not in exclude]


def quality_correlation_row(gold: GoldVector, scores: ScoreMatrix, graph_id: str = "",
                            extra: Sequence[GoldVector] = ()) -> QualityCorrelationRow:
    """Spearman of the gold values against every quality column.

    ``extra`` gold vectors (other comparison metrics) become additional
    columns, so the row carries the comparison metrics' mutual agreement too.
    Undefined coefficients (constant columns) are recorded as ``None``.
    """
    if list(gold.clustering_ids) != list(scores.clustering_ids):
        raise PipelineError("gold vector and score matrix list different clusterings")
    if len(gold.clustering_ids) < 3:
        raise PipelineError("rank correlation needs at least three clusterings")
    target = gold.values
    columns = list(scores.metrics)
    data = {m: scores.column(m) for m in scores.metrics}
    def order(gv):
        known = gv.metric in COMPARISON_METRICS
        return (not known, COMPARISON_METRICS.index(gv.metric) if known else 0, gv.metric)

    for gv in sorted((gold, *extra), key=order):
        if gv.metric not in data:
            columns.append(gv.metric)
            data[gv.metric] = gv.values
    coeffs: dict[str, float | None] = {}
    for col in columns:
        try:
            coeffs[col] = spearman(target, data[col])
        except UndefinedCorrelationError:
            coeffs[col] = None
    return QualityCorrelationRow(graph_id, gold.metric, tuple(columns), coeffs)


# --------------------------------------------------------------------------
# step 5: graph x graph context matrix

@dataclass
class ContextMatrix:
    comparison_metric: str
    graph_ids: list[str]
    values: np.ndarray  # NaN marks an undefined cell


def _pairwise(a: Sequence, b: Sequence) -> float:
    keep = [(x, y) for x, y in zip(a, b) if x is not None and y is not None]
    if len(keep) < 2:
        return float("nan")
    try:
        return spearman([x for x, _ in keep], [y for _, y in keep])
    except UndefinedCorrelationError:
        return float("nan")


def context_matrix(rows: Sequence[QualityCorrelationRow]) -> ContextMatrix:
    """Spearman between every pair of graphs' correlation vectors.

    The comparison metric's own column (identically 1) is dropped first;
    columns missing in either row are dropped pairwise.
    """
    if len(rows) < 2:
        raise PipelineError("a context matrix needs at least two graphs")
    metric = rows[0].comparison_metric
    columns = rows[0].columns
    for r in rows:
        if r.comparison_metric != metric or r.columns != columns:
            raise PipelineError("rows must share the comparison metric and the column set")
    vecs = [r.vector(exclude=(metric,)) for r in rows]
    k = len(rows)
    out = np.eye(k)
    for i in range(k):
        for j in range(i):
            out[i, j] = out[j, i] = _pairwise(vecs[i], vecs[j])
    return ContextMatrix(metric, [r.graph_id for r in rows], out)


# --------------------------------------------------------------------------
# configuration

@dataclass
class GraphEntry:
    graph_id: str
    edges: str
    truth: str | None = None
    imports: list[str] = field(default_factory=list)
    symmetrize: bool = True


@dataclass
class PipelineConfig:
    graphs: list[GraphEntry]
    detections: list[DetectionSpec]
    sampling: SamplingPlan | None = None
    output_dir: str | None = None
    include_truth: bool = True
    metrics: tuple[str, ...] = METRICS
    jobs: int = 1
    source: str | None = None

    def describe(self) -> list[str]:
        lines = [f"include_truth = {self.include_truth}"]
        if self.sampling is not None:
            s = self.sampling
            lines.append(f"sampling = count {s.sample_count}, epsilon {s.epsilon}, p {s.confidence_p}, seed {s.rng_seed}")
        else:
            lines.append("sampling = off")
        for d in self.detections:
            lines.append(f"detection {d.label} = algorithm {d.algorithm}, seed {d.seed}, k {d.k}, max_sweeps {d.max_sweeps}")
        for gr in self.graphs:
            lines.append(f"graph {gr.graph_id} = edges {gr.edges}, truth {gr.truth}, imports {gr.imports}")
        return lines


def _bool(value: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {value!r}")


def _int(section, key, default):
    try:
        return section.getint(key, fallback=default)
    except ValueError:
        raise ConfigError(f"[{section.name}] {key} must be an integer") from None


def _float(section, key, default):
    try:
        return section.getfloat(key, fallback=default)
    except ValueError:
        raise ConfigError(f"[{section.name}] {key} must be a number") from None


def read_config(path) -> PipelineConfig:
    """Parse an INI-style run description.

    Sections: ``[run]`` (output_dir, seed, include_truth, metrics, jobs),
    ``[sampling]`` (count, epsilon, p, seed), one ``[detect:NAME]`` per
    algorithm run (algorithm, seed, k, max_sweeps) and one ``[graph:ID]`` per
    graph (edges or dataset, truth, imports, symmetrize). Relative paths are
    resolved against the config file's directory.
    """
    path = Path(path)
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with path.open() as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from None
    base = path.parent

    def resolve(p: str) -> str:
        q = Path(p.strip())
        return str(q if q.is_absolute() else base / q)

    run = parser["run"] if parser.has_section("run") else parser[parser.default_section]
    default_seed = _int(run, "seed", 0)
    output_dir = run.get("output_dir")
    metrics = tuple(s.strip() for s in run.get("metrics", "all").split(",") if s.strip())
    from .quality import resolve_metrics
    try:
        metrics = resolve_metrics(metrics)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    sampling = None
    if parser.has_section("sampling"):
        s = parser["sampling"]
        eps = _float(s, "epsilon", 0.02)
        p = _float(s, "p", 0.05)
        try:
            if "count" in s:
                sampling = SamplingPlan(_int(s, "count", 5000), eps, p, _int(s, "seed", default_seed))
            else:
                sampling = SamplingPlan.from_bound(eps, p, _int(s, "seed", default_seed))
        except ValueError as exc:
            raise ConfigError(f"[sampling] {exc}") from None

    detections = []
    graphs = []
    for name in parser.sections():
        sec = parser[name]
        if name.startswith("detect:") or name.startswith("detect "):
            algo = sec.get("algorithm", name.split(":", 1)[-1].strip())
            try:
                detections.append(DetectionSpec(algo, _int(sec, "seed", default_seed),
                                                _int(sec, "k", 3), _int(sec, "max_sweeps", 100)))
            except ValueError as exc:
                raise ConfigError(f"[{name}] {exc}") from None
        elif name.startswith("graph:") or name.startswith("graph "):
            gid = name.split(":", 1)[-1].strip() if ":" in name else name[6:].strip()
            dataset = sec.get("dataset")
            if dataset:
                if dataset not in BUILTIN:
                    raise ConfigError(f"[{name}] unknown dataset {dataset!r}")
                edges = f"builtin:{dataset}"
                truth = sec.get("truth")
                truth = resolve(truth) if truth else f"builtin:{dataset}"
            else:
                if "edges" not in sec:
                    raise ConfigError(f"[{name}] needs 'edges' or 'dataset'")
                edges = resolve(sec["edges"])
                truth = resolve(sec["truth"]) if sec.get("truth") else None
            imports = [resolve(p) for p in sec.get("imports", "").split(",") if p.strip()]
            graphs.append(GraphEntry(gid, edges, truth, imports, _bool(sec.get("symmetrize", "true"))))
        elif name not in ("run", "sampling"):
            raise ConfigError(f"unknown section [{name}]")
    if not graphs:
        raise ConfigError("config lists no [graph:ID] section")
    if not detections:
        detections = [DetectionSpec("louvain", default_seed), DetectionSpec("cnm", default_seed),
                      DetectionSpec("label_propagation", default_seed), DetectionSpec("k_core", default_seed)]
    ids = [gr.graph_id for gr in graphs]
    if len(set(ids)) != len(ids):
        raise ConfigError("graph ids must be unique")
    if output_dir:
        output_dir = resolve(output_dir)
    return PipelineConfig(graphs, detections, sampling, output_dir,
                          _bool(run.get("include_truth", "true")), metrics,
                          _int(run, "jobs", 1), str(path))


# --------------------------------------------------------------------------
# per-graph job

@dataclass
class GraphReport:
    graph_id: str
    n: int
    m: int
    clustering_ids: list[str]
    provenance: list[str]
    scores: ScoreMatrix
    gold: dict[str, GoldVector]
    rows: dict[str, QualityCorrelationRow]
    warnings: list[str] = field(default_factory=list)


def _load_graph(entry: GraphEntry) -> tuple[Graph, Cover]:
    if entry.edges.startswith("builtin:"):
        edges_path, builtin_truth = football_paths()
    else:
        edges_path, builtin_truth = entry.edges, None
    g = load_edge_list(edges_path, symmetrize=entry.symmetrize)
    truth_path = entry.truth
    if truth_path is None:
        raise PipelineError(f"graph {entry.graph_id} has no ground truth")
    if truth_path.startswith("builtin:"):
        truth_path = builtin_truth
    return induce_ground_truth_subgraph(g, read_communities(truth_path))


class _WarningCollector(logging.Handler):
    def __init__(self):
        super().__init__(level=logging.WARNING)
        self.messages: list[str] = []

    def emit(self, record):
        self.messages.append(record.getMessage())


def process_graph(entry: GraphEntry, config: PipelineConfig) -> GraphReport:
    collector = _WarningCollector()
    root = logging.getLogger("commqual")
    root.addHandler(collector)
    try:
        g, truth = _load_graph(entry)
        covers = run_detections(g, config.detections, entry.imports)
        if config.include_truth:
            truth.provenance = TRUTH_ID
            covers.append(truth)
        ids = clustering_ids(covers)
        for a, b in duplicate_pairs(covers, ids):
            if a == TRUTH_ID:
                collector.messages.append(f"clustering {b} reproduces the ground truth")
        scores = score_matrix(g, covers, ids, config.metrics, config.sampling)
        gold = {m: gold_standard(truth, covers, m, ids) for m in COMPARISON_METRICS}
        rows = {}
        for m in COMPARISON_METRICS:
            others = [gold[o] for o in COMPARISON_METRICS if o != m]
            rows[m] = quality_correlation_row(gold[m], scores, entry.graph_id, extra=others)
            missing = [c for c, v in rows[m].coefficients.items() if v is None]
            if missing:
                collector.messages.append(f"{m}: undefined correlation for {', '.join(missing)}")
    finally:
        root.removeHandler(collector)
    return GraphReport(entry.graph_id, g.n, g.m, ids, [c.provenance or "" for c in covers],
                       scores, gold, rows, collector.messages)


def _safe_process(entry: GraphEntry, config: PipelineConfig):
    try:
        return process_graph(entry, config), None
    except (CommQualError, ValueError, OSError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


# --------------------------------------------------------------------------
# whole run

@dataclass
class ReportBundle:
    reports: list[GraphReport]
    contexts: dict[str, ContextMatrix]
    skipped: dict[str, str]
    warnings: list[str]
    files: dict[str, str] = field(default_factory=dict)


def run_pipeline(config: PipelineConfig, output_dir=None, jobs: int | None = None) -> ReportBundle:
    jobs = config.jobs if jobs is None else jobs
    entries = sorted(config.graphs, key=lambda e: e.graph_id)
    if jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_safe_process, entries, [config] * len(entries)))
    else:
        outcomes = [_safe_process(e, config) for e in entries]

    reports, skipped = [], {}
    for entry, (report, err) in zip(entries, outcomes):
        if report is None:
            logger.error("graph %s skipped: %s", entry.graph_id, err)
            skipped[entry.graph_id] = err
        else:
            reports.append(report)

    warnings: list[str] = []
    contexts = {}
    if len(reports) < 2:
        msg = f"{len(reports)} graph(s) processed; a context matrix needs at least two"
        logger.warning(msg)
        warnings.append(msg)
    else:
        for m in COMPARISON_METRICS:
            contexts[m] = context_matrix([r.rows[m] for r in reports])
    bundle = ReportBundle(reports, contexts, skipped, warnings)
    out = output_dir or config.output_dir
    if out:
        write_bundle(bundle, config, out)
    return bundle


# --------------------------------------------------------------------------
# output

def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def scores_csv(reports: Sequence[GraphReport]) -> str:
    rows = []
    for r in reports:
        for cid, scores in zip(r.scores.clustering_ids, r.scores.scores):
            for s in scores:
                rows.append([r.graph_id, cid, s.metric_name, fmt(s.value), s.mode,
                             fmt(s.sample_count), fmt(s.seed)])
    return _csv_text(["graph_id", "clustering_id", "metric_name", "value", "mode", "sample_count", "seed"], rows)


def gold_csv(reports: Sequence[GraphReport]) -> str:
    rows = []
    for r in reports:
        for m in COMPARISON_METRICS:
            gv = r.gold[m]
            for cid, res in zip(gv.clustering_ids, gv.results):
                rows.append([r.graph_id, cid, m, fmt(res.value), fmt(res.precision), fmt(res.recall)])
    return _csv_text(["graph_id", "clustering_id", "metric", "value", "precision", "recall"], rows)


def correlations_csv(reports: Sequence[GraphReport]) -> str:
    if not reports:
        return _csv_text(["graph_id", "comparison_metric"], [])
    columns = reports[0].rows[COMPARISON_METRICS[0]].columns
    rows = []
    for m in COMPARISON_METRICS:
        for r in reports:
            row = r.rows[m]
            rows.append([r.graph_id, m] + [fmt(row.coefficients.get(c)) for c in columns])
    return _csv_text(["graph_id", "comparison_metric", *columns], rows)


def context_csv(cm: ContextMatrix) -> str:
    rows = [[gid] + [fmt(v) for v in cm.values[i]] for i, gid in enumerate(cm.graph_ids)]
    return _csv_text(["graph", *cm.graph_ids], rows)


def manifest_text(bundle: ReportBundle, config: PipelineConfig) -> str:
    lines = [f"commqual {__version__}", f"config = {config.source}", ""]
    lines += config.describe()
    lines.append("")
    for r in bundle.reports:
        lines.append(f"[{r.graph_id}] n = {r.n}, m = {r.m}")
        for cid, prov in zip(r.clustering_ids, r.provenance):
            lines.append(f"  clustering {cid} <- {prov}")
        for w in r.warnings:
            lines.append(f"  warning: {w}")
    for gid, err in sorted(bundle.skipped.items()):
        lines.append(f"[{gid}] skipped: {err}")
    for w in bundle.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def write_bundle(bundle: ReportBundle, config: PipelineConfig, output_dir) -> dict[str, str]:
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "scores.csv": scores_csv(bundle.reports),
        "gold.csv": gold_csv(bundle.reports),
        "quality_correlations.csv": correlations_csv(bundle.reports),
    }
    for m, cm in bundle.contexts.items():
        files[f"context_matrix_{m}.csv"] = context_csv(cm)
    files["manifest.txt"] = manifest_text(bundle, config)
    for name, text in files.items():
        (out / name).write_text(text)
        bundle.files[name] = str(out / name)
    return bundle.files
