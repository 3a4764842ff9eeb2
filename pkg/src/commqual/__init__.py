"""Evaluate graph clusterings with intrinsic quality functions and find the
groups of graphs ("contexts") on which those functions rank clusterings alike."""

__version__ = "0.1.0"

from .compare import ComparisonResult, fb3, onmi
from .cover import ClusterView, Cover, cluster_view, load_cover, write_cover
from .detect import DetectionSpec, import_clustering, run_detection
from .estimators import (CNM, GroundTruthScorer, KCoreCommunities, LabelPropagation,
                         Louvain, QualityScorer)
from .graph import (Graph, GraphStats, connected_components, graph_stats,
                    induce_ground_truth_subgraph, load_edge_list)
from .quality import (METRICS, QualityScore, SamplingPlan, evaluate,
                      hoeffding_sample_size, kl_two_point, sampled_vertex_average)
from .ranking import spearman

__all__ = [
    "CNM", "ClusterView", "ComparisonResult", "Cover", "DetectionSpec", "Graph",
    "GraphStats", "GroundTruthScorer", "KCoreCommunities", "LabelPropagation",
    "Louvain", "METRICS", "QualityScore", "QualityScorer", "SamplingPlan",
    "cluster_view", "connected_components", "evaluate", "fb3", "graph_stats",
    "hoeffding_sample_size", "import_clustering", "induce_ground_truth_subgraph",
    "kl_two_point", "load_cover", "load_edge_list", "onmi", "run_detection",
    "sampled_vertex_average", "spearman", "write_cover",
]
