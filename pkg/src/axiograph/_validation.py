"""Input coercion shared by the estimator and the public helpers."""

from __future__ import annotations

import numpy as np

from .exceptions import InputError
from .graph import Clustering, Graph


def check_adjacency(X) -> np.ndarray:
    """Square, symmetric, finite, nonnegative float matrix."""
    try:
        A = np.asarray(X, dtype=float)
    except (TypeError, ValueError):
        raise InputError("adjacency must be a numeric matrix") from None
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f"adjacency must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InputError("adjacency contains non-finite weights")
    if np.any(A < 0):
        raise InputError("adjacency contains negative weights")
    if not np.array_equal(A, A.T):
        raise InputError("adjacency must be symmetric")
    return A


def check_graph(X) -> Graph:
    if isinstance(X, Graph):
        return X
    return Graph(check_adjacency(X))


def check_clustering(c, g: Graph) -> Clustering:
    """Accept a :class:`Clustering` or one label per node."""
    if not isinstance(c, Clustering):
        labels = list(np.asarray(c).ravel().tolist())
        if len(labels) != g.n_nodes:
            raise InputError(f"expected {g.n_nodes} labels, got {len(labels)}")
        c = Clustering.from_labels(labels)
    if c.nodes != frozenset(range(g.n_nodes)):
        raise InputError("clustering is not a partition of the graph's nodes")
    return c
