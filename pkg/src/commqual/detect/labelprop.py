from __future__ import annotations

import numpy as np

from ..cover import Cover
from ..graph import Graph


def _majority(labels, nbrs):
    counts: dict[int, int] = {}
    for u in nbrs:
        lab = labels[u]
        counts[lab] = counts.get(lab, 0) + 1
    top = max(counts.values())
    return sorted(lab for lab, c in counts.items() if c == top)


def label_propagation(g: Graph, seed: int = 0, max_sweeps: int = 100) -> Cover:
    """Asynchronous label propagation.

    Every sweep visits the nodes in a fresh seeded-random order and gives each
    node the label most frequent among its neighbors, picking uniformly at
    random among tied labels. Stops once every node already carries one of
    its neighborhood's most frequent labels, or after ``max_sweeps`` sweeps.
    """
    if max_sweeps < 1:
        raise ValueError("max_sweeps must be at least 1")
    rng = np.random.default_rng(seed)
    labels = list(range(g.n))
    adj = g.adjacency
    for _ in range(max_sweeps):
        for v in rng.permutation(g.n).tolist():
            if not adj[v]:
                continue
            best = _majority(labels, adj[v])
            labels[v] = best[0] if len(best) == 1 else best[int(rng.integers(len(best)))]
        if all(not adj[v] or labels[v] in _majority(labels, adj[v]) for v in range(g.n)):
            break
    return Cover.from_labels(labels, provenance=f"label_propagation-s{seed}")
