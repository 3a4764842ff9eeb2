from __future__ import annotations

import heapq

from ..cover import Cover
from ..exceptions import UndefinedInputError
from ..graph import Graph


def cnm_greedy(g: Graph) -> Cover:
    """Greedy agglomerative modularity maximisation (Clauset, Newman, Moore).

    Starting from singletons, merge the pair of adjacent communities with the
    largest modularity gain while that gain is positive. Gains are compared as
    exact integers, 2m * e_ij - vol_i * vol_j, and ties go to the pair whose
    (smaller min-id, larger min-id) is lexicographically smallest.
    """
    m = g.m
    if m == 0:
        raise UndefinedInputError("CNM needs at least one edge")
    two_m = 2 * m
    n = g.n
    weight: list[dict[int, int]] = [dict.fromkeys(g.neighbors(v), 1) for v in range(n)]
    vol = g.degrees.tolist()
    min_id = list(range(n))
    members: list[list[int] | None] = [[v] for v in range(n)]

    def entry(i, j):
        gain = two_m * weight[i][j] - vol[i] * vol[j]
        a, b = min_id[i], min_id[j]
        lo, hi = (a, b) if a < b else (b, a)
        return (-gain, lo, hi, i, j)

    heap = [entry(u, v) for u, v in g.edges()]
    heapq.heapify(heap)
    while heap:
        neg, lo, hi, i, j = heapq.heappop(heap)
        if members[i] is None or members[j] is None or j not in weight[i]:
            continue
        if entry(i, j)[:3] != (neg, lo, hi):
            continue
        if neg >= 0:
            break
        # merge i into j
        for k, w in weight[i].items():
            if k == j:
                continue
            weight[j][k] = weight[j].get(k, 0) + w
            weight[k][j] = weight[j][k]
            del weight[k][i]
        del weight[j][i]
        weight[i] = {}
        vol[j] += vol[i]
        min_id[j] = min(min_id[j], min_id[i])
        members[j].extend(members[i])
        members[i] = None
        for k in weight[j]:
            heapq.heappush(heap, entry(j, k))
    clusters = sorted((c for c in members if c is not None), key=min)
    return Cover(clusters, n, provenance="cnm")
