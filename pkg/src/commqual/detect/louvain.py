from __future__ import annotations

import numpy as np

from ..cover import Cover
from ..exceptions import UndefinedInputError
from ..graph import Graph


def _one_level(adj, vol, two_m, rng):
    """Local moving phase. Returns (community of each node, whether anything moved)."""
    n = len(adj)
    comm = list(range(n))
    tot = list(vol)
    order = rng.permutation(n).tolist()
    moved_any = False
    while True:
        moved = 0
        for i in order:
            old = comm[i]
            links: dict[int, int] = {}
            for j, w in adj[i].items():
                c = comm[j]
                links[c] = links.get(c, 0) + w
            tot[old] -= vol[i]
            best = old
            # scaled gain of inserting i into c: 2m * k_i,in(c) - vol_i * tot_c
            best_gain = two_m * links.get(old, 0) - vol[i] * tot[old]
            for c in sorted(links):
                gain = two_m * links[c] - vol[i] * tot[c]
                if gain > best_gain:
                    best, best_gain = c, gain
            tot[best] += vol[i]
            if best != old:
                comm[i] = best
                moved += 1
        if not moved:
            break
        moved_any = True
    return comm, moved_any


def _aggregate(adj, vol, comm):
    ids: dict[int, int] = {}
    for c in comm:
        if c not in ids:
            ids[c] = len(ids)
    k = len(ids)
    new_adj: list[dict[int, int]] = [dict() for _ in range(k)]
    new_vol = [0] * k
    for i, nbrs in enumerate(adj):
        ci = ids[comm[i]]
        new_vol[ci] += vol[i]
        for j, w in nbrs.items():
            cj = ids[comm[j]]
            if ci != cj:
                new_adj[ci][cj] = new_adj[ci].get(cj, 0) + w
    return new_adj, new_vol, [ids[c] for c in comm]


def louvain(g: Graph, seed: int = 0) -> Cover:
    """Two-phase Louvain modularity optimisation.

    Each level shuffles its node order once from the seeded generator, moves
    nodes to the neighboring community with the best strictly positive gain
    until no node moves, then collapses communities into weighted nodes.
    Stops at the first level where nothing moves. Gains are exact integers,
    so the result depends only on ``seed``.
    """
    if g.m == 0:
        raise UndefinedInputError("Louvain needs at least one edge")
    rng = np.random.default_rng(seed)
    two_m = 2 * g.m
    adj = [dict.fromkeys(g.neighbors(v), 1) for v in range(g.n)]
    vol = g.degrees.tolist()
    assignment = list(range(g.n))
    while True:
        comm, moved = _one_level(adj, vol, two_m, rng)
        if not moved:
            break
        adj, vol, level_map = _aggregate(adj, vol, comm)
        assignment = [level_map[a] for a in assignment]
    groups: dict[int, list[int]] = {}
    for v, a in enumerate(assignment):
        groups.setdefault(a, []).append(v)
    clusters = sorted(groups.values(), key=min)
    return Cover(clusters, g.n, provenance=f"louvain-s{seed}")
