"""Coerce common graph and clustering representations into Graph / Cover."""

from __future__ import annotations

import numpy as np

from .cover import Cover
from .graph import Graph


def check_graph(X) -> Graph:
    """Accept a :class:`Graph`, a networkx graph, an ``(E, 2)`` integer edge
    array, or a square (dense or scipy sparse) adjacency matrix."""
    if isinstance(X, Graph):
        return X
    if hasattr(X, "adj") and hasattr(X, "nodes") and hasattr(X, "is_directed"):
        nodes = list(X.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        edges = [(index[u], index[v]) for u, v in X.edges()]
        return Graph.from_edges(edges, n=len(nodes), labels=[str(v) for v in nodes])
    if hasattr(X, "tocoo"):
        coo = X.tocoo()
        if coo.shape[0] != coo.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got {coo.shape}")
        mask = coo.data != 0
        return Graph.from_edges(zip(coo.row[mask].tolist(), coo.col[mask].tolist()), n=coo.shape[0])
    arr = np.asarray(X)
    if arr.ndim == 2 and arr.shape[1] == 2 and arr.shape[0] != 2:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError("edge array must hold integer node ids")
        return Graph.from_edges(arr.tolist())
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
        rows, cols = np.nonzero(arr)
        return Graph.from_edges(zip(rows.tolist(), cols.tolist()), n=arr.shape[0])
    raise TypeError(f"cannot interpret {type(X).__name__} of shape {getattr(arr, 'shape', None)} as a graph")


def check_cover(C, g: Graph | None = None) -> Cover:
    """Accept a :class:`Cover`, a 1-D array of per-node labels, or an
    iterable of node-id collections."""
    if isinstance(C, Cover):
        cover = C
    else:
        arr = None
        try:
            arr = np.asarray(C)
        except (ValueError, TypeError):
            pass
        if arr is not None and arr.ndim == 1 and arr.dtype != object:
            cover = Cover.from_labels(arr.tolist())
        else:
            clusters = [list(c) for c in C]
            n = g.n if g is not None else 1 + max(max(c) for c in clusters if c)
            cover = Cover(clusters, n)
    if g is not None and cover.n_nodes != g.n:
        raise ValueError(f"clustering spans {cover.n_nodes} nodes, graph has {g.n}")
    return cover
