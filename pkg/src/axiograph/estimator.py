"""scikit-learn style wrapper around the optimizers."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_clustering, check_graph
from .exceptions import InputError
from .optimize import DEFAULT_ENUMERATION_CAP, optimize_exact, optimize_greedy
from .quality import as_spec, evaluate

__all__ = ["QualityClustering", "quality_score"]


def quality_score(X, labels, quality="modularity") -> float:
    """Quality of the partition ``labels`` of the graph ``X``."""
    g = check_graph(X)
    return evaluate(as_spec(quality), g, check_clustering(labels, g))


class QualityClustering(ClusterMixin, BaseEstimator):
    """Cluster a weighted graph by maximizing a quality function.

    Parameters
    ----------
    quality : str or QualitySpec
        Quality to maximize, e.g. ``"modularity"`` or ``"adaptive:1,2"``.
    method : {"auto", "exact", "greedy"}
        ``auto`` searches exhaustively up to ``max_exact_nodes`` nodes and
        falls back to the greedy optimizer beyond that.
    random_state : int or None
        Seed for the greedy optimizer's visiting order.
    max_exact_nodes : int
        Largest graph handed to exhaustive search.

    Attributes
    ----------
    labels_ : ndarray of shape (n_nodes,)
    quality_ : float
    optima_ : tuple of Clustering
        Every tied optimum (exact search) or the single greedy result.
    """

    def __init__(self, quality="modularity", method="auto", random_state=None,
                 max_exact_nodes=10):
        self.quality = quality
        self.method = method
        self.random_state = random_state
        self.max_exact_nodes = max_exact_nodes

    def fit(self, X, y=None):
        spec = as_spec(self.quality)
        g = check_graph(X)
        if self.method not in ("auto", "exact", "greedy"):
            raise InputError(f"unknown method {self.method!r}")
        if not 0 <= self.max_exact_nodes <= DEFAULT_ENUMERATION_CAP:
            raise InputError(f"max_exact_nodes must lie in [0, {DEFAULT_ENUMERATION_CAP}]")
        exact = self.method == "exact" or (
            self.method == "auto" and g.n_nodes <= self.max_exact_nodes)
        if exact:
            res = optimize_exact(spec, g)
            self.optima_ = res.optima
            self.quality_ = res.best_quality
        else:
            best = optimize_greedy(spec, g, seed=self.random_state)
            self.optima_ = (best,)
            self.quality_ = evaluate(spec, g, best)
        self.labels_ = np.asarray(self.optima_[0].to_labels(g.n_nodes), dtype=int)
        self.n_features_in_ = g.n_nodes
        return self

    def score(self, X, y=None):
        """Quality of the fitted labels on ``X``."""
        check_is_fitted(self, "labels_")
        return quality_score(X, self.labels_, self.quality)
