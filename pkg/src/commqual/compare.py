"""Extrinsic comparison of two covers: overlapping BCubed F-score and overlapping NMI."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .cover import Cover
from .exceptions import NodeSetMismatchError

COMPARISON_METRICS = ("onmi", "fb3")


@dataclass(frozen=True)
class ComparisonResult:
    metric: str
    value: float
    precision: float | None = None
    recall: float | None = None


def _check_pair(c: Cover, l: Cover) -> None:
    if c.n_nodes != l.n_nodes:
        raise NodeSetMismatchError(f"covers span different node sets ({c.n_nodes} vs {l.n_nodes} nodes)")
    if c.n_nodes == 0:
        raise NodeSetMismatchError("covers are empty")


def _partition_precision(c: Cover, l: Cover) -> float:
    # every associate pair shares exactly one cluster on each side, so the
    # per-element average collapses to |C(e) & L(e)| / |C(e)|
    joint = Counter((mc[0], ml[0]) for mc, ml in zip(c.memberships, l.memberships))
    sizes = [len(x) for x in c.clusters]
    return sum(cnt * cnt / sizes[ci] for (ci, _), cnt in joint.items()) / c.n_nodes


def _overlap_precision(c: Cover, l: Cover) -> float:
    total = 0.0
    for e in range(c.n_nodes):
        shared_c: Counter = Counter()
        for ci in c.memberships[e]:
            shared_c.update(c.clusters[ci])
        shared_l: Counter = Counter()
        for li in l.memberships[e]:
            shared_l.update(l.clusters[li])
        acc = 0.0
        for e2, kc in shared_c.items():
            acc += min(kc, shared_l.get(e2, 0)) / kc
        total += acc / len(shared_c)
    return total / c.n_nodes


def bcubed_precision(c: Cover, l: Cover) -> float:
    """Overlapping BCubed precision of ``c`` against ``l`` (self-pairs included)."""
    _check_pair(c, l)
    if c.is_partition and l.is_partition:
        return _partition_precision(c, l)
    return _overlap_precision(c, l)


def fb3(c: Cover, l: Cover) -> ComparisonResult:
    """Harmonic mean of overlapping BCubed precision and recall."""
    p = bcubed_precision(c, l)
    r = bcubed_precision(l, c)
    f = 0.0 if p + r == 0 else 2.0 * p * r / (p + r)
    return ComparisonResult("fb3", f, p, r)


def _h(p: float) -> float:
    return -p * math.log2(p) if p > 0 else 0.0


def _entropy(size: int, n: int) -> float:
    return _h(size / n) + _h((n - size) / n)


def _conditional_entropies(x: Cover, y: Cover, prune: bool = True) -> float:
    """Normalized H(X|Y) averaged over the clusters of ``x``."""
    n = x.n_nodes
    y_sizes = [len(c) for c in y.clusters]
    big = [j for j, s in enumerate(y_sizes) if 2 * s >= n]
    total = 0.0
    for members in x.clusters:
        size_x = len(members)
        hx = _entropy(size_x, n)
        if hx == 0.0:
            # a cluster spanning every node carries no information; treated as matched
            continue
        overlap = Counter()
        for v in members:
            overlap.update(y.memberships[v])
        if prune and 2 * size_x < n:
            candidates = sorted(set(overlap).union(big))
        else:
            candidates = range(len(y_sizes))
        best = hx
        for j in candidates:
            inter = overlap.get(j, 0)
            only_x = size_x - inter
            only_y = y_sizes[j] - inter
            neither = n - size_x - only_y
            h11 = _h(inter / n)
            h10 = _h(only_x / n)
            h01 = _h(only_y / n)
            h00 = _h(neither / n)
            # reject pairs whose mutual information comes from anti-correlation
            if h11 + h00 < h10 + h01:
                continue
            hy = _entropy(y_sizes[j], n)
            cond = h11 + h10 + h01 + h00 - hy
            if cond < best:
                best = cond
        total += best / hx
    return total / len(x.clusters)


def onmi(c: Cover, l: Cover, prune: bool = True) -> ComparisonResult:
    """Overlapping normalized mutual information, 1 - (H(X|Y) + H(Y|X)) / 2.

    Each cluster is a binary membership variable; a cluster's conditional
    entropy given the other cover is its best-matching counterpart's, where a
    counterpart only counts if the pair agrees more than it disagrees.
    ``prune`` skips pairs that can never satisfy that condition (disjoint
    clusters both smaller than half the nodes); it does not change the result.
    """
    _check_pair(c, l)
    hxy = _conditional_entropies(c, l, prune)
    hyx = _conditional_entropies(l, c, prune)
    value = 1.0 - 0.5 * (hxy + hyx)
    return ComparisonResult("onmi", min(1.0, max(0.0, value)))


def compare(c: Cover, l: Cover, metric: str) -> ComparisonResult:
    if metric == "fb3":
        return fb3(c, l)
    if metric in ("onmi", "nmi"):
        return onmi(c, l)
    raise ValueError(f"unknown comparison metric {metric!r}")
