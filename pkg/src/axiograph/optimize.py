"""Exact and greedy maximization of clustering quality.

Exact search enumerates every set partition as a restricted growth string
(RGS): a label vector ``a`` with ``a[0] = 0`` and ``a[i] <= 1 + max(a[:i])``.
Each partition has exactly one such encoding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import InfeasibleError, InputError
from .graph import Clustering, Graph, connected_components
from .quality import _summand, as_spec, batch_quality, evaluate

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "TIE_TOLERANCE",
    "OptimizeResult",
    "enumerate_partitions",
    "rgs_array",
    "optimize_exact",
    "optimize_greedy",
    "aggregate_graph",
]

DEFAULT_ENUMERATION_CAP = 12
TIE_TOLERANCE = 1e-9
_CHUNK = 1 << 17


@dataclass(frozen=True)
class OptimizeResult:
    best_quality: float
    optima: tuple
    partitions_examined: int

    @property
    def unique(self):
        return len(self.optima) == 1

    @property
    def best(self):
        return self.optima[0]


def _check_cap(n, cap):
    if n < 0:
        raise InputError("node count must be nonnegative")
    if n > cap:
        raise InfeasibleError(
            f"exact search over {n} nodes exceeds the enumeration cap of {cap}"
        )


def enumerate_partitions(n: int, cap: int = DEFAULT_ENUMERATION_CAP):
    """Yield every partition of ``{0..n-1}`` once, in RGS lexicographic order."""
    _check_cap(n, cap)
    if n == 0:
        yield Clustering()
        return
    a = [0] * n
    # running maxima: m[i] = max(a[:i+1])
    m = [0] * n
    while True:
        yield Clustering.from_labels(a)
        i = n - 1
        while i > 0 and a[i] == m[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]


@lru_cache(maxsize=16)
def rgs_array(n: int) -> np.ndarray:
    """All restricted growth strings of length ``n`` as an int8 matrix.

    Rows are in lexicographic order, the same order as
    :func:`enumerate_partitions`.
    """
    if n == 0:
        out = np.zeros((1, 0), dtype=np.int8)
    else:
        out = np.zeros((1, 1), dtype=np.int8)
        top = np.zeros(1, dtype=np.int8)
        for _ in range(1, n):
            # each row spawns children with next label 0..top+1
            counts = top.astype(np.int64) + 2
            parent = np.repeat(np.arange(len(out)), counts)
            starts = np.cumsum(counts) - counts
            child = (np.arange(len(parent)) - np.repeat(starts, counts)).astype(np.int8)
            out = np.concatenate([out[parent], child[:, None]], axis=1)
            top = np.maximum(top[parent], child)
    out.setflags(write=False)
    return out


def optimize_exact(spec, g: Graph, cap: int = DEFAULT_ENUMERATION_CAP,
                   tie_tol: float = TIE_TOLERANCE) -> OptimizeResult:
    """Global maximum over all partitions, with every tie.

    Two partitions tie when their qualities differ by at most
    ``tie_tol * max(1, |best|)``.
    """
    spec = as_spec(spec)
    n = g.n_nodes
    _check_cap(n, cap)
    rgs = rgs_array(n)
    best = -math.inf
    kept_q, kept_idx = [], []
    for start in range(0, len(rgs), _CHUNK):
        q = batch_quality(spec, g, rgs[start:start + _CHUNK])
        best = max(best, float(q.max()))
        floor = best - tie_tol * max(1.0, abs(best))
        keep = np.nonzero(q >= floor)[0]
        kept_q.append(q[keep])
        kept_idx.append(keep + start)
    q_all = np.concatenate(kept_q)
    idx_all = np.concatenate(kept_idx)
    floor = best - tie_tol * max(1.0, abs(best))
    idx_all = np.sort(idx_all[q_all >= floor])
    optima = tuple(Clustering.from_labels(rgs[i].tolist()) for i in idx_all.tolist())
    # report the value from the compensated-sum evaluator
    best_quality = evaluate(spec, g, optima[0])
    return OptimizeResult(best_quality=best_quality, optima=optima,
                          partitions_examined=len(rgs))


def aggregate_graph(g: Graph, labels) -> Graph:
    """Collapse each cluster into one node.

    The self loop of a cluster node is the cluster's within weight, edges
    between cluster nodes carry the summed between weights and node masses
    add up. ``labels`` must use ``0..k-1``.
    """
    labels = np.asarray(labels, dtype=int)
    k = int(labels.max()) + 1 if len(labels) else 0
    onehot = np.zeros((g.n_nodes, k))
    onehot[np.arange(g.n_nodes), labels] = 1.0
    adj = onehot.T @ g.adjacency @ onehot
    adj = (adj + adj.T) / 2.0
    mass = onehot.T @ g.node_mass
    return Graph(adj, node_mass=mass)


def _canonical(labels):
    _, inv = np.unique(labels, return_inverse=True)
    # relabel by first appearance so the result is deterministic
    order = {}
    out = np.empty(len(labels), dtype=int)
    for i, lab in enumerate(inv.tolist()):
        out[i] = order.setdefault(lab, len(order))
    return out


def _local_moves(spec, g: Graph, total, labels, rng, tol):
    """Move single nodes to the best neighbouring (or a fresh) cluster until stable.

    Returns the new labels and whether any node moved.
    """
    n = g.n_nodes
    adj = g.adjacency
    deg = g.degrees
    mass = g.node_mass
    labels = np.array(labels, dtype=int)
    w = np.zeros(n)
    v = np.bincount(labels, weights=deg, minlength=n).astype(float)
    m = np.bincount(labels, weights=mass, minlength=n).astype(float)
    size = np.bincount(labels, minlength=n)
    for i in range(n):
        w[labels[i]] += adj[i, labels == labels[i]].sum()
    f = _summand
    moved_any = False
    while True:
        moved = False
        for i in rng.permutation(n).tolist():
            a = labels[i]
            links = np.bincount(labels, weights=adj[i], minlength=n)
            loop = adj[i, i]
            k_a = links[a] - loop
            w_a, v_a, m_a = w[a] - 2 * k_a - loop, v[a] - deg[i], m[a] - mass[i]
            base = f(spec, w[a], v[a], m[a], total)
            stay = f(spec, w_a, v_a, m_a, total)
            nbrs = set(labels[np.nonzero(adj[i])[0]].tolist())
            nbrs.discard(a)
            empty = np.nonzero(size == 0)[0]
            if len(empty) and size[a] > 1:
                nbrs.add(int(empty[0]))
            best_gain, best_b = tol, None
            for b in sorted(nbrs):
                k_b = links[b]
                gain = (stay + f(spec, w[b] + 2 * k_b + loop, v[b] + deg[i], m[b] + mass[i], total)
                        - base - f(spec, w[b], v[b], m[b], total))
                if gain > best_gain:
                    best_gain, best_b = gain, b
            if best_b is not None:
                b = best_b
                w[a], v[a], m[a] = w_a, v_a, m_a
                size[a] -= 1
                size[b] += 1
                if size[a] == 0:
                    w[a] = v[a] = m[a] = 0.0
                w[b] += 2 * links[b] + loop
                v[b] += deg[i]
                m[b] += mass[i]
                labels[i] = b
                moved = True
        if not moved:
            return labels, moved_any
        moved_any = True


def optimize_greedy(spec, g: Graph, seed=None, tol: float = 1e-12,
                    max_rounds: int = 100, restarts: int = 4) -> Clustering:
    """Local moving with aggregation, in the style of the Louvain method.

    Starts from singletons. Each level moves nodes while quality improves
    by more than ``tol``, then collapses clusters into nodes and repeats on
    the smaller graph. Once no level improves, the flattened partition is
    polished by another round of moves on the original graph; the cycle
    repeats until nothing changes. Node visiting order is a shuffle drawn
    from ``seed``; ``restarts`` independent shuffles are run and the best
    result (earliest on ties) is returned.
    """
    spec = as_spec(spec)
    if restarts < 1:
        raise InputError("restarts must be at least 1")
    if spec.kind == "coco":
        return connected_components(g)
    if g.n_nodes == 0:
        return Clustering()
    best, best_q = None, -math.inf
    for rng in np.random.default_rng(seed).spawn(restarts):
        c = _greedy_once(spec, g, rng, tol, max_rounds)
        q = evaluate(spec, g, c)
        if q > best_q + tol:
            best, best_q = c, q
    return best


def _greedy_once(spec, g: Graph, rng, tol, max_rounds) -> Clustering:
    n = g.n_nodes
    total = g.total_volume
    membership = np.arange(n)
    for _ in range(max_rounds):
        graph = aggregate_graph(g, membership)
        level_labels = np.arange(graph.n_nodes)
        while True:
            level_labels, moved = _local_moves(spec, graph, total, level_labels, rng, tol)
            if not moved:
                break
            level_labels = _canonical(level_labels)
            membership = level_labels[membership]
            graph = aggregate_graph(graph, level_labels)
            level_labels = np.arange(graph.n_nodes)
        membership = _canonical(membership)
        polished, moved = _local_moves(spec, g, total, membership, rng, tol)
        if not moved:
            break
        membership = _canonical(polished)
    return Clustering.from_labels(membership.tolist())
