"""Undirected simple graphs and the structural primitives the metrics use."""

from __future__ import annotations

import logging
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .exceptions import EmptyGraphError, ParseError

logger = logging.getLogger(__name__)


class Graph:
    """Immutable undirected simple graph over dense ids ``0..n-1``.

    Each dense id carries an external string label (the token read from the
    edge-list file). Neighbor lists are sorted tuples, so edge queries are a
    binary search and intersections are linear merges.
    """

    __slots__ = ("_adj", "_labels", "_index", "_m", "_degrees", "_adj_sets")

    def __init__(self, adjacency: Sequence[Sequence[int]], labels: Sequence[str] | None = None):
        adj = tuple(tuple(sorted(set(nbrs))) for nbrs in adjacency)
        n = len(adj)
        total = 0
        for v, nbrs in enumerate(adj):
            if nbrs and (nbrs[0] < 0 or nbrs[-1] >= n):
                raise ValueError(f"neighbor id out of range for node {v}")
            if v in nbrs:
                raise ValueError(f"self-loop on node {v}")
            total += len(nbrs)
        for v, nbrs in enumerate(adj):
            for u in nbrs:
                row = adj[u]
                i = bisect_left(row, v)
                if i == len(row) or row[i] != v:
                    raise ValueError(f"adjacency not symmetric for edge ({v}, {u})")
        if labels is None:
            labels = [str(v) for v in range(n)]
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise ValueError("labels must have one entry per node")
        self._adj = adj
        self._labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}
        if len(self._index) != n:
            raise ValueError("node labels must be unique")
        self._m = total // 2
        self._degrees = np.fromiter((len(a) for a in adj), dtype=np.int64, count=n)
        self._degrees.setflags(write=False)
        self._adj_sets = None

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], n: int | None = None, labels: Sequence[str] | None = None) -> "Graph":
        """Build a graph from integer edge pairs. Self-loops and duplicates are dropped."""
        pairs = [(int(u), int(v)) for u, v in edges]
        if n is None:
            n = 1 + max((max(u, v) for u, v in pairs), default=-1)
            if labels is not None:
                n = max(n, len(labels))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in pairs:
            if u == v:
                continue
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, labels)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        if self._adj_sets is None:
            self._adj_sets = tuple(frozenset(a) for a in self._adj)
        return self._adj_sets[v]

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        row = self._adj[u]
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def edges(self):
        """Yield each undirected edge once as ``(u, v)`` with ``u < v``."""
        for u, nbrs in enumerate(self._adj):
            for v in nbrs[bisect_left(nbrs, u + 1):]:
                yield u, v

    def label(self, v: int) -> str:
        return self._labels[v]

    def index_of(self, label) -> int | None:
        return self._index.get(str(label))

    def subgraph(self, nodes: Iterable[int]) -> "Graph":
        """Induced subgraph, re-densified in ascending order of the old ids."""
        keep = sorted(set(nodes))
        remap = {old: new for new, old in enumerate(keep)}
        adj = [[remap[u] for u in self._adj[old] if u in remap] for old in keep]
        return Graph(adj, [self._labels[old] for old in keep])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj and self._labels == other._labels

    def __hash__(self) -> int:
        return hash((self._adj, self._labels))


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    degree_sequence: tuple[int, ...]
    median_degree: float


def _tokens(line: str) -> list[str]:
    return line.split()


def load_edge_list(path, symmetrize: bool = True) -> Graph:
    """Read a whitespace-separated edge list.

    Lines starting with ``#`` and blank lines are skipped. Labels are mapped
    to dense ids by first appearance. Self-loops are dropped. With
    ``symmetrize`` (the default) repeated and reciprocal edges collapse into
    one undirected edge; with ``symmetrize=False`` the file must already list
    each undirected edge once and a repeat raises :class:`ParseError`.
    """
    path = Path(path)
    index: dict[str, int] = {}
    labels: list[str] = []
    edges: set[tuple[int, int]] = set()
    n_loops = 0
    with path.open() as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = _tokens(line)
            if len(parts) < 2:
                raise ParseError("expected two node labels", path, lineno)
            if len(parts) > 2:
                # a third column is tolerated only if it is numeric (edge weight)
                try:
                    float(parts[2])
                except ValueError:
                    raise ParseError(f"unexpected token {parts[2]!r}", path, lineno) from None
                if len(parts) > 3:
                    raise ParseError("too many columns", path, lineno)
            ids = []
            for tok in parts[:2]:
                i = index.get(tok)
                if i is None:
                    i = index[tok] = len(labels)
                    labels.append(tok)
                ids.append(i)
            u, v = ids
            if u == v:
                n_loops += 1
                continue
            key = (u, v) if u < v else (v, u)
            if key in edges and not symmetrize:
                raise ParseError(f"duplicate edge {parts[0]} {parts[1]}", path, lineno)
            edges.add(key)
    if not edges:
        raise EmptyGraphError(f"{path}: no edges")
    if n_loops:
        logger.warning("%s: dropped %d self-loop(s)", path, n_loops)
    return Graph.from_edges(edges, n=len(labels), labels=labels)


def write_edge_list(g: Graph, path) -> None:
    with Path(path).open("w") as fh:
        for u, v in g.edges():
            fh.write(f"{g.label(u)} {g.label(v)}\n")


def connected_components(g: Graph) -> list[list[int]]:
    """Components in order of their smallest node id; members sorted."""
    seen = bytearray(g.n)
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = 1
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if not seen[u]:
                    seen[u] = 1
                    comp.append(u)
                    queue.append(u)
        comp.sort()
        out.append(comp)
    return out


def largest_component(g: Graph) -> list[int]:
    """Largest component; ties go to the one holding the smallest node id."""
    comps = connected_components(g)
    if not comps:
        raise EmptyGraphError("graph has no nodes")
    # components come ordered by smallest id, and max() keeps the first maximum
    return max(comps, key=len)


def median(values) -> float:
    s = sorted(values)
    if not s:
        raise ValueError("median of empty sequence")
    mid = len(s) // 2
    if len(s) % 2:
        return float(s[mid])
    return (s[mid - 1] + s[mid]) / 2.0


def graph_stats(g: Graph) -> GraphStats:
    if g.n < 1:
        raise EmptyGraphError("graph has no nodes")
    degs = tuple(int(d) for d in g.degrees)
    return GraphStats(n=g.n, m=g.m, degree_sequence=degs, median_degree=median(degs))


def induce_ground_truth_subgraph(g: Graph, truth):
    """Restrict a graph to the largest connected component of its covered nodes.

    ``truth`` is either a :class:`~commqual.cover.Cover` over ``g`` or an
    iterable of communities given as node labels (as read by
    :func:`~commqual.cover.read_communities`). Labels absent from ``g`` are
    skipped and counted.

    Returns ``(graph, cover)`` with ids re-densified; communities emptied by
    the restriction are dropped.
    """
    from .cover import Cover

    if isinstance(truth, Cover):
        if truth.n_nodes != g.n:
            raise ValueError("cover is not defined over this graph")
        # singletons added by cover completion are not ground-truth communities
        declared = len(truth.clusters) - truth.completed_nodes
        communities = [list(c) for c in truth.clusters[:declared]]
        skipped = truth.skipped_labels
    else:
        communities = []
        skipped = 0
        for comm in truth:
            ids = []
            for lab in comm:
                i = g.index_of(lab)
                if i is None:
                    skipped += 1
                else:
                    ids.append(i)
            communities.append(ids)
    if skipped:
        logger.warning("ground truth: skipped %d unknown label(s)", skipped)

    covered = sorted({v for comm in communities for v in comm})
    if not covered:
        raise EmptyGraphError("no graph node belongs to a ground-truth community")
    sub = g.subgraph(covered)
    keep = [covered[i] for i in largest_component(sub)]
    result = g.subgraph(keep)
    if result.m == 0:
        raise EmptyGraphError("largest covered component has no edges")
    remap = {old: new for new, old in enumerate(keep)}
    restricted = []
    for comm in communities:
        members = [remap[v] for v in comm if v in remap]
        if members:
            restricted.append(members)
    cover = Cover(restricted, result.n, provenance="ground-truth", skipped_labels=skipped)
    return result, cover


def _bfs_within(g: Graph, source: int, members: frozenset[int] | set[int]):
    """BFS restricted to ``members``; returns (last node visited, its depth, visited count)."""
    dist = {source: 0}
    queue = deque([source])
    last = source
    while queue:
        v = queue.popleft()
        last = v
        d = dist[v] + 1
        for u in g.neighbors(v):
            if u in members and u not in dist:
                dist[u] = d
                queue.append(u)
    return last, dist[last], len(dist)


def double_sweep_diameter(g: Graph, members) -> tuple[int, bool]:
    """Lower bound on the diameter of the subgraph induced by ``members``.

    BFS from the smallest member, then BFS again from the last node the first
    sweep reached; the eccentricity found by the second sweep is returned. The
    bound is exact on trees. The flag is False when the induced subgraph is
    disconnected, in which case only the smallest member's component is seen.
    """
    members = members if isinstance(members, (set, frozenset)) else set(members)
    if not members:
        raise ValueError("empty cluster")
    if len(members) == 1:
        return 0, True
    start = min(members)
    far, _, seen = _bfs_within(g, start, members)
    _, ecc, _ = _bfs_within(g, far, members)
    return ecc, seen == len(members)
