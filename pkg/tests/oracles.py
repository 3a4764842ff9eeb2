"""Independent brute-force references used by the tests.

Nothing here imports the code under test beyond the Graph/Cover containers.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def adjacency_matrix(g) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    return a


def modularity_double_sum(a: np.ndarray, labels) -> float:
    k = a.sum(axis=1)
    two_m = k.sum()
    same = np.equal.outer(labels, labels)
    return float(((a - np.outer(k, k) / two_m) * same).sum() / two_m)


def fb3_pairs(c_sets, l_sets, n):
    """Overlapping BCubed by enumerating every ordered element pair."""
    def memb(sets):
        return [{i for i, s in enumerate(sets) if e in s} for e in range(n)]

    cm, lm = memb(c_sets), memb(l_sets)

    def prec(a, b):
        outer = []
        for e in range(n):
            inner = []
            for e2 in range(n):
                shared = len(a[e] & a[e2])
                if shared:
                    inner.append(min(shared, len(b[e] & b[e2])) / shared)
            outer.append(sum(inner) / len(inner))
        return sum(outer) / n

    p, r = prec(cm, lm), prec(lm, cm)
    return p, r, 2 * p * r / (p + r)


def apsp_diameter(g, members=None) -> int:
    """Floyd-Warshall diameter of the induced subgraph (largest finite distance)."""
    nodes = sorted(range(g.n) if members is None else members)
    idx = {v: i for i, v in enumerate(nodes)}
    k = len(nodes)
    d = np.full((k, k), np.inf)
    np.fill_diagonal(d, 0)
    for v in nodes:
        for u in g.neighbors(v):
            if u in idx:
                d[idx[v], idx[u]] = 1
    for w in range(k):
        d = np.minimum(d, d[:, [w]] + d[[w], :])
    finite = d[np.isfinite(d)]
    return int(finite.max())


def bfs_components(n, edges):
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    comp = [-1] * n
    out = []
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = len(out)
        group = [s]
        q = deque([s])
        while q:
            v = q.popleft()
            for u in adj[v]:
                if comp[u] < 0:
                    comp[u] = len(out)
                    group.append(u)
                    q.append(u)
        out.append(sorted(group))
    return out


def k_core_by_repeated_pruning(n, edges, k) -> set:
    alive = set(range(n))
    nbrs = {v: set() for v in range(n)}
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if len(nbrs[v] & alive) < k:
                alive.discard(v)
                changed = True
    return alive


def onmi_entropy(c_sets, l_sets, n) -> float:
    """Overlapping NMI straight from the joint membership distributions, no pruning."""
    def h(p):
        return -p * math.log2(p) if p > 0 else 0.0

    def vec(s):
        x = np.zeros(n, dtype=int)
        x[list(s)] = 1
        return x

    def cond(xs, ys):
        total = 0.0
        for x in xs:
            px = x.mean()
            hx = h(px) + h(1 - px)
            if hx == 0:
                continue
            best = hx
            for y in ys:
                p = {(a, b): np.mean((x == a) & (y == b)) for a in (0, 1) for b in (0, 1)}
                if h(p[1, 1]) + h(p[0, 0]) < h(p[1, 0]) + h(p[0, 1]):
                    continue
                py = y.mean()
                hxy = sum(h(v) for v in p.values()) - (h(py) + h(1 - py))
                best = min(best, hxy)
            total += best / hx
        return total / len(xs)

    xs = [vec(s) for s in c_sets]
    ys = [vec(s) for s in l_sets]
    return 1 - 0.5 * (cond(xs, ys) + cond(ys, xs))


def connected_labeled_graphs(n):
    """Every connected simple graph on nodes 0..n-1 (as edge lists)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
        if n == 1 or (edges and len(bfs_components(n, edges)) == 1):
            yield edges


def prufer_to_edges(seq, n):
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    edges.append((u, v))
    return edges
