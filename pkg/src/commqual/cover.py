"""Clusterings (partitions or overlapping covers) over a graph's nodes."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .exceptions import EmptyCoverError, ParseError
from .graph import Graph, double_sweep_diameter

logger = logging.getLogger(__name__)


class Cover:
    """A set of non-empty node sets whose union is every node ``0..n_nodes-1``.

    Duplicate clusters are collapsed (first occurrence kept) and nodes no
    cluster mentions are appended as singleton clusters, in ascending id
    order. ``completed_nodes`` records how many singletons were added.
    """

    __slots__ = ("clusters", "memberships", "n_nodes", "provenance",
                 "skipped_labels", "completed_nodes", "_sets")

    def __init__(self, clusters: Iterable[Iterable[int]], n_nodes: int,
                 provenance: str | None = None, skipped_labels: int = 0):
        seen: set[frozenset] = set()
        kept: list[tuple[int, ...]] = []
        for c in clusters:
            members = frozenset(int(v) for v in c)
            if not members:
                raise EmptyCoverError("clusters must be non-empty")
            if min(members) < 0 or max(members) >= n_nodes:
                raise ValueError(f"cluster member out of range 0..{n_nodes - 1}")
            if members in seen:
                continue
            seen.add(members)
            kept.append(tuple(sorted(members)))
        covered = np.zeros(n_nodes, dtype=bool)
        for c in kept:
            covered[list(c)] = True
        missing = np.flatnonzero(~covered)
        kept.extend((int(v),) for v in missing)
        if not kept:
            raise EmptyCoverError("cover has no clusters")

        memberships: list[list[int]] = [[] for _ in range(n_nodes)]
        for ci, c in enumerate(kept):
            for v in c:
                memberships[v].append(ci)

        self.clusters: tuple[tuple[int, ...], ...] = tuple(kept)
        self.memberships: tuple[tuple[int, ...], ...] = tuple(tuple(m) for m in memberships)
        self.n_nodes = int(n_nodes)
        self.provenance = provenance
        self.skipped_labels = int(skipped_labels)
        self.completed_nodes = int(len(missing))
        self._sets = None

    @classmethod
    def from_labels(cls, labels: Sequence, provenance: str | None = None) -> "Cover":
        """Partition from one label per node; clusters ordered by first appearance."""
        groups: dict = {}
        for v, lab in enumerate(labels):
            groups.setdefault(lab, []).append(v)
        return cls(groups.values(), len(labels), provenance=provenance)

    @classmethod
    def singletons(cls, n_nodes: int, provenance: str | None = None) -> "Cover":
        return cls(((v,) for v in range(n_nodes)), n_nodes, provenance=provenance)

    @classmethod
    def whole(cls, n_nodes: int, provenance: str | None = None) -> "Cover":
        return cls([range(n_nodes)], n_nodes, provenance=provenance)

    @property
    def overlapping(self) -> bool:
        return any(len(m) > 1 for m in self.memberships)

    @property
    def is_partition(self) -> bool:
        return not self.overlapping

    @property
    def cluster_sets(self) -> tuple[frozenset[int], ...]:
        if self._sets is None:
            self._sets = tuple(frozenset(c) for c in self.clusters)
        return self._sets

    def labels(self) -> np.ndarray:
        """Cluster index of every node. Only defined for partitions."""
        if self.overlapping:
            raise ValueError("labels() is undefined for an overlapping cover")
        return np.fromiter((m[0] for m in self.memberships), dtype=np.int64, count=self.n_nodes)

    def as_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(self.cluster_sets)

    def __len__(self) -> int:
        return len(self.clusters)

    def __iter__(self):
        return iter(self.clusters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cover):
            return NotImplemented
        return self.n_nodes == other.n_nodes and self.as_sets() == other.as_sets()

    def __hash__(self) -> int:
        return hash((self.n_nodes, self.as_sets()))

    def __repr__(self) -> str:
        kind = "overlapping" if self.overlapping else "partition"
        return f"Cover({len(self)} clusters, n={self.n_nodes}, {kind})"


@dataclass(frozen=True)
class ClusterView:
    size: int
    internal_edges: int
    cut: int
    volume: int
    diameter: int
    connected: bool = True


def read_communities(path) -> list[list[str]]:
    """One community per line, whitespace-separated labels; blank and '#' lines skipped."""
    path = Path(path)
    out = []
    with path.open() as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            out.append(line.split())
    return out


def cover_from_labels(communities: Iterable[Iterable], g: Graph, provenance: str | None = None) -> Cover:
    """Map label communities onto ``g``; unknown labels are skipped and counted."""
    skipped = 0
    clusters = []
    for comm in communities:
        ids = []
        for lab in comm:
            i = g.index_of(lab)
            if i is None:
                skipped += 1
            else:
                ids.append(i)
        if ids:
            clusters.append(ids)
    if not clusters:
        raise EmptyCoverError("no community contains a node of the graph")
    if skipped:
        logger.warning("skipped %d label(s) not present in the graph", skipped)
    cover = Cover(clusters, g.n, provenance=provenance, skipped_labels=skipped)
    if cover.completed_nodes:
        logger.warning("%d uncovered node(s) added as singletons", cover.completed_nodes)
    return cover


def load_cover(path, g: Graph, provenance: str | None = None) -> Cover:
    try:
        communities = read_communities(path)
    except UnicodeDecodeError as exc:
        raise ParseError(f"not a text file ({exc})", path) from None
    return cover_from_labels(communities, g, provenance=provenance or Path(path).stem)


def write_cover(cover, path, g: Graph | None = None) -> None:
    """Write one cluster per line, members sorted, as labels of ``g`` when given.

    Accepts a :class:`Cover` or a plain list of node-id collections; empty
    clusters in the latter are rejected before anything is written.
    """
    if isinstance(cover, Cover):
        clusters = cover.clusters
    else:
        clusters = [sorted(c) for c in cover]
        if any(len(c) == 0 for c in clusters):
            raise EmptyCoverError("refusing to write an empty cluster")
    lines = []
    for c in clusters:
        if g is None:
            lines.append(" ".join(str(v) for v in c))
        else:
            lines.append(" ".join(g.label(v) for v in c))
    Path(path).write_text("\n".join(lines) + "\n")


def cluster_view(g: Graph, cover: Cover, c: int) -> ClusterView:
    members = cover.cluster_sets[c]
    internal2 = 0
    volume = 0
    for v in members:
        nbrs = g.neighbors(v)
        volume += len(nbrs)
        for u in nbrs:
            if u in members:
                internal2 += 1
    internal = internal2 // 2
    diam, connected = double_sweep_diameter(g, members)
    if not connected:
        logger.warning("cluster %d induces a disconnected subgraph; diameter is a partial estimate", c)
    return ClusterView(
        size=len(members),
        internal_edges=internal,
        cut=volume - internal2,
        volume=volume,
        diameter=diam,
        connected=connected,
    )
