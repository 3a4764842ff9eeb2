"""Intrinsic quality functions f(G, C) -> R for a clustering of a graph.

Three families, by the locality of the information they use:

* vertex-level (clustering coefficient, permanence, flake-odf, fomd): a score
  per (node, cluster) membership; a node's score is the mean over its
  memberships and the clustering's score is the mean over nodes;
* community-level (cut ratio, conductance, compactness, modularity): a score
  per cluster, summed;
* graph-level (surprise, significance): KL divergences between two-point
  distributions.

All logarithms are natural. Degenerate divergences evaluate to ``math.inf``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .cover import Cover
from .exceptions import UndefinedInputError
from .graph import Graph, double_sweep_diameter, median

logger = logging.getLogger(__name__)

VERTEX_METRICS = ("clustering_coefficient", "permanence", "flake_odf", "fomd")
COMMUNITY_METRICS = ("cut_ratio", "conductance", "compactness", "modularity")
GRAPH_METRICS = ("surprise", "significance")
METRICS = VERTEX_METRICS + COMMUNITY_METRICS + GRAPH_METRICS

# metrics whose exact evaluation needs triangle enumeration; these are the
# ones the pipeline estimates by node sampling on large graphs
TRIANGLE_METRICS = ("clustering_coefficient", "permanence")

ALIASES = {
    "cc": "clustering_coefficient",
    "clus": "clustering_coefficient",
    "perm": "permanence",
    "f-odf": "flake_odf",
    "flake": "flake_odf",
    "odf": "flake_odf",
    "FOMD": "fomd",
    "cut": "cut_ratio",
    "cond": "conductance",
    "comp": "compactness",
    "mod": "modularity",
    "sur": "surprise",
    "surp": "surprise",
    "sign": "significance",
    "sig": "significance",
}


def resolve_metric(name: str) -> str:
    if name in METRICS:
        return name
    key = ALIASES.get(name, ALIASES.get(name.lower()))
    if key is None:
        raise ValueError(f"unknown quality function {name!r}; choose from {', '.join(METRICS)}")
    return key


def resolve_metrics(names) -> tuple[str, ...]:
    if names is None or names == "all":
        return METRICS
    if isinstance(names, str):
        names = [s for s in names.split(",") if s.strip()]
    out = []
    for s in names:
        s = s.strip()
        if s == "all":
            out.extend(METRICS)
        else:
            out.append(resolve_metric(s))
    return tuple(dict.fromkeys(out))


@dataclass(frozen=True)
class QualityScore:
    metric_name: str
    value: float
    mode: str = "exact"
    sample_count: int | None = None
    seed: int | None = None
    warnings: int = 0


def hoeffding_sample_size(epsilon: float, p: float) -> int:
    """Smallest t with 2 exp(-2 t eps^2) <= p, i.e. t >= ln(p/2) / (-2 eps^2).

    ``p`` is the admissible probability that the sample mean of t i.i.d.
    [0, 1] variables misses the true mean by ``epsilon`` or more.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if not 0 < p < 2:
        raise ValueError("p must lie in (0, 2)")
    bound = math.log(p / 2.0) / (-2.0 * epsilon * epsilon)
    return max(1, math.ceil(bound))


@dataclass(frozen=True)
class SamplingPlan:
    sample_count: int = 5000
    epsilon: float = 0.02
    confidence_p: float = 0.05
    rng_seed: int = 0

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError("sample_count must be at least 1")
        needed = hoeffding_sample_size(self.epsilon, self.confidence_p)
        if self.sample_count < needed:
            raise ValueError(
                f"{self.sample_count} samples do not guarantee epsilon={self.epsilon} "
                f"at p={self.confidence_p}; at least {needed} are required"
            )

    @classmethod
    def from_bound(cls, epsilon: float, confidence_p: float, rng_seed: int = 0) -> "SamplingPlan":
        return cls(hoeffding_sample_size(epsilon, confidence_p), epsilon, confidence_p, rng_seed)


def kl_two_point(x: float, y: float) -> float:
    """KL divergence D(x || y) between Bernoulli(x) and Bernoulli(y), in nats.

    Uses 0 log 0 = 0. Returns ``inf`` when y puts zero mass on an outcome x
    does not.
    """
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValueError(f"probabilities must lie in [0, 1], got ({x}, {y})")
    total = 0.0
    for a, b in ((x, y), (1.0 - x, 1.0 - y)):
        if a == 0.0:
            continue
        if b == 0.0:
            return math.inf
        total += a * math.log(a / b)
    return max(total, 0.0)


def _binom2(k: int) -> int:
    return k * (k - 1) // 2


# --------------------------------------------------------------------------
# per-cluster statistics

@dataclass
class ClusterTable:
    """Per-cluster counts for a whole cover, computed in one pass."""

    size: np.ndarray
    internal: np.ndarray
    volume: np.ndarray
    diameter: np.ndarray | None = None
    disconnected: int = 0

    @property
    def cut(self) -> np.ndarray:
        return self.volume - 2 * self.internal


def cluster_table(g: Graph, cover: Cover, with_diameter: bool = False) -> ClusterTable:
    k = len(cover)
    size = np.empty(k, dtype=np.int64)
    internal = np.empty(k, dtype=np.int64)
    volume = np.empty(k, dtype=np.int64)
    diam = np.empty(k, dtype=np.int64) if with_diameter else None
    disconnected = 0
    adj = g.adjacency
    for ci, members in enumerate(cover.cluster_sets):
        inner2 = 0
        vol = 0
        for v in members:
            nbrs = adj[v]
            vol += len(nbrs)
            for u in nbrs:
                if u in members:
                    inner2 += 1
        size[ci] = len(members)
        internal[ci] = inner2 // 2
        volume[ci] = vol
        if with_diameter:
            d, connected = double_sweep_diameter(g, members)
            diam[ci] = d
            if not connected:
                disconnected += 1
    if disconnected:
        logger.warning("%d cluster(s) induce a disconnected subgraph; their diameters are partial", disconnected)
    return ClusterTable(size, internal, volume, diam, disconnected)


def approx_diameter(g: Graph, cover: Cover, c: int) -> int:
    """Double-sweep BFS estimate of the diameter of cluster ``c``.

    Never exceeds the true diameter and is exact on trees. A disconnected
    cluster is measured on the component of its smallest member, with a
    logged warning.
    """
    d, connected = double_sweep_diameter(g, cover.cluster_sets[c])
    if not connected:
        logger.warning("cluster %d induces a disconnected subgraph", c)
    return d


# --------------------------------------------------------------------------
# vertex-level scores

def _internal_neighbors(g: Graph, v: int, members: frozenset) -> list[int]:
    return [u for u in g.neighbors(v) if u in members]


def _local_clustering(g: Graph, inner: list[int]) -> float:
    k = len(inner)
    if k < 2:
        return 0.0
    inner_set = set(inner)
    links2 = 0
    for u in inner:
        links2 += len(g.neighbor_set(u) & inner_set)
    return links2 / (k * (k - 1))


def _neighbor_cluster_counts(g: Graph, cover: Cover, v: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    memberships = cover.memberships
    for u in g.neighbors(v):
        for c in memberships[u]:
            counts[c] = counts.get(c, 0) + 1
    return counts


def _vertex_scorer(g: Graph, cover: Cover, metric: str) -> Callable[[int], float]:
    sets = cover.cluster_sets
    memberships = cover.memberships

    if metric == "clustering_coefficient":
        def score(v):
            vals = [_local_clustering(g, _internal_neighbors(g, v, sets[c])) for c in memberships[v]]
            return sum(vals) / len(vals)

    elif metric == "permanence":
        def score(v):
            k_v = g.degree(v)
            if k_v == 0:
                return 0.0
            counts = _neighbor_cluster_counts(g, cover, v)
            vals = []
            for c in memberships[v]:
                inner = counts.get(c, 0)
                pull = max((x for cc, x in counts.items() if cc != c), default=0)
                pull = max(pull, 1)
                cc_v = _local_clustering(g, _internal_neighbors(g, v, sets[c])) if inner >= 2 else 0.0
                vals.append(inner / (pull * k_v) + cc_v - 1.0)
            return sum(vals) / len(vals)

    elif metric == "flake_odf":
        def score(v):
            k_v = g.degree(v)
            counts = _neighbor_cluster_counts(g, cover, v)
            vals = [1.0 if counts.get(c, 0) > k_v - counts.get(c, 0) else 0.0 for c in memberships[v]]
            return sum(vals) / len(vals)

    elif metric == "fomd":
        med = median(g.degrees.tolist()) if g.n else 0.0

        def score(v):
            counts = _neighbor_cluster_counts(g, cover, v)
            vals = [1.0 if counts.get(c, 0) > med else 0.0 for c in memberships[v]]
            return sum(vals) / len(vals)

    else:
        raise ValueError(f"{metric!r} is not a vertex-level quality function")
    return score


def vertex_scores(g: Graph, cover: Cover, metric: str, nodes: Iterable[int] | None = None) -> np.ndarray:
    """Per-node scores for a vertex-level metric (all nodes by default)."""
    _check_cover(g, cover)
    score = _vertex_scorer(g, cover, resolve_metric(metric))
    nodes = range(g.n) if nodes is None else nodes
    return np.array([score(v) for v in nodes], dtype=float)


def _vertex_mean(g: Graph, cover: Cover, metric: str) -> float:
    return float(np.mean(vertex_scores(g, cover, metric)))


def sampled_vertex_average(g: Graph, cover: Cover, metric: str, plan: SamplingPlan) -> QualityScore:
    """Mean vertex score over ``plan.sample_count`` nodes drawn with replacement.

    When the graph has no more nodes than the sample budget the exact mean is
    returned instead (and reported as exact).
    """
    metric = resolve_metric(metric)
    if metric not in VERTEX_METRICS:
        raise ValueError(f"{metric!r} is not a vertex-level quality function")
    if g.n <= plan.sample_count:
        return QualityScore(metric, _vertex_mean(g, cover, metric), "exact", None, None)
    _check_cover(g, cover)
    rng = np.random.default_rng(plan.rng_seed)
    draws = rng.integers(0, g.n, size=plan.sample_count)
    uniq, inverse = np.unique(draws, return_inverse=True)
    score = _vertex_scorer(g, cover, metric)
    vals = np.array([score(int(v)) for v in uniq], dtype=float)
    return QualityScore(metric, float(np.mean(vals[inverse])), "sampled", plan.sample_count, plan.rng_seed)


# --------------------------------------------------------------------------
# public single-metric functions

def _check_cover(g: Graph, cover: Cover) -> None:
    if cover.n_nodes != g.n:
        raise ValueError(f"cover spans {cover.n_nodes} nodes but the graph has {g.n}")


def clustering_coefficient(g: Graph, cover: Cover) -> QualityScore:
    return QualityScore("clustering_coefficient", _vertex_mean(g, cover, "clustering_coefficient"))


def permanence(g: Graph, cover: Cover) -> QualityScore:
    """Mean permanence; a node with no neighbor outside its cluster has its
    external pull floored at 1."""
    return QualityScore("permanence", _vertex_mean(g, cover, "permanence"))


def flake_odf(g: Graph, cover: Cover) -> QualityScore:
    return QualityScore("flake_odf", _vertex_mean(g, cover, "flake_odf"))


def fomd(g: Graph, cover: Cover) -> QualityScore:
    return QualityScore("fomd", _vertex_mean(g, cover, "fomd"))


def _cut_ratio(g: Graph, t: ClusterTable) -> float:
    n = g.n
    total = 0.0
    for k, cut in zip(t.size.tolist(), t.cut.tolist()):
        if k == n:
            total += k / n
        else:
            total += (1.0 - cut / (k * (n - k))) * (k / n)
    return total


def _conductance(g: Graph, t: ClusterTable) -> float:
    n = g.n
    total = 0.0
    for k, cut, vol in zip(t.size.tolist(), t.cut.tolist(), t.volume.tolist()):
        if vol > 0:
            total += (1.0 - cut / vol) * (k / n)
    return total


def _compactness(t: ClusterTable) -> float:
    return float(sum(mc / max(1, d) for mc, d in zip(t.internal.tolist(), t.diameter.tolist())))


def _modularity(g: Graph, t: ClusterTable) -> float:
    m = g.m
    if m == 0:
        raise UndefinedInputError("modularity is undefined on a graph without edges")
    two_m = 2.0 * m
    return float(sum(mc / m - (vol / two_m) ** 2 for mc, vol in zip(t.internal.tolist(), t.volume.tolist())))


def _require_edges(g: Graph, what: str) -> None:
    if g.n < 2 or g.m < 1:
        raise UndefinedInputError(f"{what} needs at least two nodes and one edge")


def _surprise(g: Graph, t: ClusterTable) -> float:
    _require_edges(g, "surprise")
    # overlapping covers can count an edge or a pair more than once
    q = min(1.0, int(t.internal.sum()) / g.m)
    q_ref = min(1.0, sum(_binom2(k) for k in t.size.tolist()) / _binom2(g.n))
    return kl_two_point(q, q_ref)


def _significance(g: Graph, t: ClusterTable) -> float:
    _require_edges(g, "significance")
    density = g.m / _binom2(g.n)
    total = 0.0
    for k, mc in zip(t.size.tolist(), t.internal.tolist()):
        pairs = _binom2(k)
        if pairs == 0:
            continue
        total += pairs * kl_two_point(mc / pairs, density)
    return total


def cut_ratio(g: Graph, cover: Cover) -> QualityScore:
    _check_cover(g, cover)
    return QualityScore("cut_ratio", _cut_ratio(g, cluster_table(g, cover)))


def conductance(g: Graph, cover: Cover) -> QualityScore:
    _check_cover(g, cover)
    return QualityScore("conductance", _conductance(g, cluster_table(g, cover)))


def compactness(g: Graph, cover: Cover) -> QualityScore:
    _check_cover(g, cover)
    t = cluster_table(g, cover, with_diameter=True)
    return QualityScore("compactness", _compactness(t), warnings=t.disconnected)


def modularity(g: Graph, cover: Cover) -> QualityScore:
    _check_cover(g, cover)
    return QualityScore("modularity", _modularity(g, cluster_table(g, cover)))


def surprise(g: Graph, cover: Cover) -> QualityScore:
    _check_cover(g, cover)
    return QualityScore("surprise", _surprise(g, cluster_table(g, cover)))


def significance(g: Graph, cover: Cover) -> QualityScore:
    _check_cover(g, cover)
    return QualityScore("significance", _significance(g, cluster_table(g, cover)))


QUALITY_FUNCTIONS = {
    "clustering_coefficient": clustering_coefficient,
    "permanence": permanence,
    "flake_odf": flake_odf,
    "fomd": fomd,
    "cut_ratio": cut_ratio,
    "conductance": conductance,
    "compactness": compactness,
    "modularity": modularity,
    "surprise": surprise,
    "significance": significance,
}


def evaluate(g: Graph, cover: Cover, metrics=None, plan: SamplingPlan | None = None,
             sampled: Iterable[str] = TRIANGLE_METRICS) -> list[QualityScore]:
    """Score one cover under several metrics, sharing the per-cluster pass.

    With a ``plan``, the metrics named in ``sampled`` (by default the two that
    enumerate triangles) are estimated by :func:`sampled_vertex_average`.
    """
    _check_cover(g, cover)
    names = resolve_metrics(metrics)
    sampled = {resolve_metric(s) for s in sampled} if plan is not None else set()
    table = None
    if any(x in COMMUNITY_METRICS or x in GRAPH_METRICS for x in names):
        table = cluster_table(g, cover, with_diameter="compactness" in names)
    out = []
    for name in names:
        if name in VERTEX_METRICS:
            if name in sampled:
                out.append(sampled_vertex_average(g, cover, name, plan))
            else:
                out.append(QualityScore(name, _vertex_mean(g, cover, name)))
        elif name == "cut_ratio":
            out.append(QualityScore(name, _cut_ratio(g, table)))
        elif name == "conductance":
            out.append(QualityScore(name, _conductance(g, table)))
        elif name == "compactness":
            out.append(QualityScore(name, _compactness(table), warnings=table.disconnected))
        elif name == "modularity":
            out.append(QualityScore(name, _modularity(g, table)))
        elif name == "surprise":
            out.append(QualityScore(name, _surprise(g, table)))
        elif name == "significance":
            out.append(QualityScore(name, _significance(g, table)))
    return out
