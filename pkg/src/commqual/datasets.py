"""Bundled data and synthetic graph generators."""

from __future__ import annotations

from importlib import resources

import numpy as np

from .cover import Cover, cover_from_labels, read_communities
from .graph import Graph, induce_ground_truth_subgraph, load_edge_list

BUILTIN = ("football",)


def football_paths():
    """Paths of the bundled football edge list and conference file."""
    root = resources.files("commqual") / "data"
    return root / "football.txt", root / "football_divisions.txt"


def load_football(preprocess: bool = True) -> tuple[Graph, Cover]:
    """American college football games, Division IA, fall 2000, with the 12
    conferences as ground truth (115 teams, 613 distinct games)."""
    edges, truth = football_paths()
    g = load_edge_list(edges)
    communities = read_communities(truth)
    if preprocess:
        return induce_ground_truth_subgraph(g, communities)
    return g, cover_from_labels(communities, g, provenance="ground-truth")


def planted_partition(n_groups: int, group_size: int, p_in: float, p_out: float,
                      seed: int = 0) -> tuple[Graph, Cover]:
    """Random graph with ``n_groups`` planted blocks of ``group_size`` nodes.

    Each intra-block pair is an edge with probability ``p_in`` and each
    inter-block pair with probability ``p_out``. Edge counts are drawn from
    the matching binomials and pairs are then chosen without replacement, so
    the generator stays linear in the number of edges.
    """
    rng = np.random.default_rng(seed)
    n = n_groups * group_size
    edges = []
    pairs_in = group_size * (group_size - 1) // 2
    iu, ju = np.triu_indices(group_size, k=1)
    for b in range(n_groups):
        k = rng.binomial(pairs_in, p_in)
        pick = rng.choice(pairs_in, size=k, replace=False)
        off = b * group_size
        edges.append(np.stack([iu[pick] + off, ju[pick] + off], axis=1))
    pairs_out = n * (n - group_size) // 2
    k_out = rng.binomial(pairs_out, p_out)
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < k_out:
        need = k_out - len(chosen)
        u = rng.integers(0, n, size=2 * need)
        v = rng.integers(0, n, size=2 * need)
        for a, b in zip(u.tolist(), v.tolist()):
            if a // group_size == b // group_size:
                continue
            key = (a, b) if a < b else (b, a)
            chosen.add(key)
            if len(chosen) == k_out:
                break
    if chosen:
        edges.append(np.array(sorted(chosen), dtype=np.int64))
    all_edges = np.concatenate(edges) if edges else np.empty((0, 2), dtype=np.int64)
    g = Graph.from_edges(all_edges.tolist(), n=n)
    truth = Cover([range(b * group_size, (b + 1) * group_size) for b in range(n_groups)], n,
                  provenance="planted")
    return g, truth
