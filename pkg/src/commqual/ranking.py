"""Rank correlation with average ranks for ties."""

from __future__ import annotations

import math

import numpy as np

from .exceptions import UndefinedCorrelationError


def average_ranks(values) -> np.ndarray:
    """1-based ranks, ties sharing the mean of the positions they span.

    ``+inf`` ranks above every finite value; NaN is rejected.
    """
    a = np.asarray(values, dtype=float)
    if a.ndim != 1:
        raise ValueError("expected a 1-D vector")
    if np.isnan(a).any():
        raise ValueError("cannot rank NaN")
    order = np.argsort(a, kind="stable")
    sorted_a = a[order]
    ranks = np.empty(len(a), dtype=float)
    i = 0
    n = len(a)
    while i < n:
        j = i
        while j + 1 < n and sorted_a[j + 1] == sorted_a[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def pearson(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedCorrelationError("correlation is undefined for a constant vector")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def spearman(a, b) -> float:
    """Spearman's coefficient: Pearson correlation of the average-rank vectors."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch ({len(a)} vs {len(b)})")
    if len(a) < 2:
        raise UndefinedCorrelationError("need at least two observations")
    return pearson(average_ranks(a), average_ranks(b))
