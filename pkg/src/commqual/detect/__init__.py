"""Community detection: four built-in algorithms plus import of external clusterings."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..cover import Cover, load_cover
from ..graph import Graph
from .cnm import cnm_greedy
from .kcore import k_core_communities, k_core_nodes
from .labelprop import label_propagation
from .louvain import louvain

ALGORITHMS = ("louvain", "cnm", "label_propagation", "k_core")

_ALIASES = {"lp": "label_propagation", "labelprop": "label_propagation", "kcore": "k_core",
            "clauset": "cnm", "3-core": "k_core"}


@dataclass(frozen=True)
class DetectionSpec:
    algorithm: str
    seed: int = 0
    k: int = 3
    max_sweeps: int = 100

    def __post_init__(self):
        algo = _ALIASES.get(self.algorithm, self.algorithm)
        if algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
        object.__setattr__(self, "algorithm", algo)
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be at least 1")

    @property
    def label(self) -> str:
        if self.algorithm == "k_core":
            return f"k_core-k{self.k}"
        if self.algorithm == "cnm":
            return "cnm"
        return f"{self.algorithm}-s{self.seed}"


def run_detection(g: Graph, spec: DetectionSpec) -> Cover:
    if spec.algorithm == "louvain":
        return louvain(g, seed=spec.seed)
    if spec.algorithm == "cnm":
        return cnm_greedy(g)
    if spec.algorithm == "label_propagation":
        return label_propagation(g, seed=spec.seed, max_sweeps=spec.max_sweeps)
    return k_core_communities(g, k=spec.k)


def import_clustering(path, g: Graph, label: str | None = None) -> Cover:
    """Load a clustering computed by an external tool (MCL, Infomap, ...)."""
    return load_cover(path, g, provenance=label or f"import:{Path(path).stem}")


__all__ = [
    "ALGORITHMS", "DetectionSpec", "run_detection", "import_clustering",
    "louvain", "cnm_greedy", "label_propagation", "k_core_communities", "k_core_nodes",
]
