from __future__ import annotations

from collections import deque

from ..cover import Cover
from ..graph import Graph


def k_core_nodes(g: Graph, k: int) -> list[int]:
    """Nodes of the maximal subgraph in which every node has degree >= k."""
    deg = g.degrees.tolist()
    removed = bytearray(g.n)
    queue = deque(v for v in range(g.n) if deg[v] < k)
    for v in queue:
        removed[v] = 1
    while queue:
        v = queue.popleft()
        for u in g.neighbors(v):
            if removed[u]:
                continue
            deg[u] -= 1
            if deg[u] < k:
                removed[u] = 1
                queue.append(u)
    return [v for v in range(g.n) if not removed[v]]


def k_core_communities(g: Graph, k: int = 3) -> Cover:
    """Connected components of the k-core; nodes outside the core become singletons."""
    if k < 2:
        raise ValueError("k must be at least 2")
    core = set(k_core_nodes(g, k))
    clusters = []
    seen = set()
    for s in sorted(core):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if u in core and u not in seen:
                    seen.add(u)
                    comp.append(u)
                    queue.append(u)
        clusters.append(comp)
    return Cover(clusters, g.n, provenance=f"k_core-k{k}")
