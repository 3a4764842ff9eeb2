"""scikit-learn style wrappers: detectors are clusterers, the scorer is a transformer."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .compare import compare
from .detect import cnm_greedy, k_core_communities, label_propagation, louvain
from .quality import SamplingPlan, evaluate, resolve_metrics
from .validation import check_cover, check_graph


class _Detector(ClusterMixin, BaseEstimator):
    def fit(self, X, y=None):
        g = check_graph(X)
        self.cover_ = self._detect(g)
        self.n_clusters_ = len(self.cover_)
        self.labels_ = self.cover_.labels() if self.cover_.is_partition else None
        return self

    def _detect(self, g):
        raise NotImplementedError


class Louvain(_Detector):
    def __init__(self, seed=0):
        self.seed = seed

    def _detect(self, g):
        return louvain(g, seed=self.seed)


class CNM(_Detector):
    def _detect(self, g):
        return cnm_greedy(g)


class LabelPropagation(_Detector):
    def __init__(self, seed=0, max_sweeps=100):
        self.seed = seed
        self.max_sweeps = max_sweeps

    def _detect(self, g):
        return label_propagation(g, seed=self.seed, max_sweeps=self.max_sweeps)


class KCoreCommunities(_Detector):
    def __init__(self, k=3):
        self.k = k

    def _detect(self, g):
        return k_core_communities(g, k=self.k)


class QualityScorer(TransformerMixin, BaseEstimator):
    """Score clusterings of one graph.

    ``fit`` takes the graph; ``transform`` takes a list of clusterings and
    returns an array with one row per clustering and one column per metric.
    With ``sample_count`` set, the triangle-based vertex metrics are
    estimated from that many nodes drawn with replacement.
    """

    def __init__(self, metrics="all", sample_count=None, epsilon=0.02, p=0.05, seed=0):
        self.metrics = metrics
        self.sample_count = sample_count
        self.epsilon = epsilon
        self.p = p
        self.seed = seed

    def fit(self, X, y=None):
        self.graph_ = check_graph(X)
        self.metrics_ = resolve_metrics(self.metrics)
        self.plan_ = None
        if self.sample_count is not None:
            self.plan_ = SamplingPlan(self.sample_count, self.epsilon, self.p, self.seed)
        return self

    def transform(self, X):
        check_is_fitted(self, "graph_")
        covers = [check_cover(c, self.graph_) for c in X]
        out = np.empty((len(covers), len(self.metrics_)))
        for i, c in enumerate(covers):
            out[i] = [s.value for s in evaluate(self.graph_, c, self.metrics_, self.plan_)]
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "metrics_")
        return np.asarray(self.metrics_, dtype=object)


class GroundTruthScorer(TransformerMixin, BaseEstimator):
    """Compare clusterings with a reference cover (``fb3`` or ``onmi``)."""

    def __init__(self, metric="fb3"):
        self.metric = metric

    def fit(self, X, y=None):
        self.truth_ = check_cover(X)
        return self

    def transform(self, X):
        check_is_fitted(self, "truth_")
        return np.array([compare(check_cover(c), self.truth_, self.metric).value for c in X])
