"""Weighted graphs, partitions and the structural predicates built on them.

All weight sums run over *ordered* node pairs: an undirected edge ``{i, j}``
with ``i != j`` contributes ``E(i, j)`` twice to a volume or within weight,
a self loop ``E(i, i)`` contributes once.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .exceptions import InputError

__all__ = [
    "Graph",
    "Clustering",
    "ClusterStats",
    "volume",
    "within_weight",
    "cluster_stats",
    "scale_graph",
    "permute_graph",
    "permute_clustering",
    "is_refinement",
    "check_agreement",
    "is_consistent_improvement",
    "connected_components",
    "clique_graph",
    "induced_subgraph",
]


def _readonly(a):
    a.setflags(write=False)
    return a


class Graph:
    """Immutable symmetric graph with nonnegative edge weights.

    Parameters
    ----------
    adjacency : array-like of shape (n, n)
        Symmetric matrix of finite nonnegative weights. The diagonal holds
        self loops.
    labels : sequence of str, optional
        Node names, ``"0" .. "n-1"`` by default. Must be unique.
    node_mass : array-like of shape (n,), optional
        Positive per-node mass (number of original nodes a node stands
        for after aggregation). Defaults to ones.
    """

    __slots__ = ("_adj", "_labels", "_mass", "_index")

    def __init__(self, adjacency, labels=None, node_mass=None):
        adj = np.array(adjacency, dtype=float, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            if adj.size == 0:
                adj = np.zeros((0, 0))
            else:
                raise InputError(f"adjacency must be square, got shape {adj.shape}")
        n = adj.shape[0]
        if not np.all(np.isfinite(adj)):
            raise InputError("edge weights must be finite")
        if np.any(adj < 0):
            raise InputError("edge weights must be nonnegative")
        if not np.array_equal(adj, adj.T):
            raise InputError("adjacency must be symmetric")
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise InputError(f"expected {n} labels, got {len(labels)}")
            if len(set(labels)) != n:
                raise InputError("node labels must be unique")
        if node_mass is None:
            mass = np.ones(n)
        else:
            mass = np.array(node_mass, dtype=float, copy=True).reshape(-1)
            if mass.shape != (n,):
                raise InputError(f"expected {n} node masses, got {mass.shape[0]}")
            if not np.all(np.isfinite(mass)) or np.any(mass <= 0):
                raise InputError("node masses must be finite and positive")
        self._adj = _readonly(adj)
        self._labels = labels
        self._mass = _readonly(mass)
        self._index = {lab: i for i, lab in enumerate(labels)}

    @classmethod
    def from_edges(cls, nodes, edges, node_mass=None):
        """Build a graph from ``(u, v, weight)`` triples.

        ``nodes`` is either a node count or a sequence of labels; edge
        endpoints are node ids or labels accordingly. Each unordered pair
        may appear at most once.
        """
        if isinstance(nodes, (int, np.integer)):
            labels = None
            n = int(nodes)
            lookup = None
        else:
            labels = list(nodes)
            n = len(labels)
            lookup = {str(lab): i for i, lab in enumerate(labels)}
        adj = np.zeros((n, n))
        seen = set()
        for u, v, w in edges:
            if lookup is not None:
                try:
                    i, j = lookup[str(u)], lookup[str(v)]
                except KeyError as exc:
                    raise InputError(f"unknown node {exc.args[0]!r}") from None
            else:
                i, j = int(u), int(v)
                if not (0 <= i < n and 0 <= j < n):
                    raise InputError(f"node id out of range in edge ({u}, {v})")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise InputError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            adj[i, j] = adj[j, i] = float(w)
        return cls(adj, labels=labels, node_mass=node_mass)

    @property
    def n_nodes(self):
        return self._adj.shape[0]

    @property
    def adjacency(self):
        """Read-only dense weight matrix."""
        return self._adj

    @property
    def labels(self):
        return self._labels

    @property
    def node_mass(self):
        return self._mass

    @property
    def nodes(self):
        return range(self.n_nodes)

    @property
    def degrees(self):
        """Per-node volume, ``sum_j E(i, j)``."""
        return self._adj.sum(axis=1)

    @property
    def total_volume(self):
        return math.fsum(self._adj.ravel())

    def weight(self, i, j):
        return float(self._adj[i, j])

    def index(self, label):
        try:
            return self._index[str(label)]
        except KeyError:
            raise InputError(f"unknown node label {label!r}") from None

    def edges(self):
        """Yield ``(i, j, w)`` for ``i <= j`` and ``w > 0``."""
        rows, cols = np.nonzero(np.triu(self._adj))
        for i, j in zip(rows.tolist(), cols.tolist()):
            yield i, j, float(self._adj[i, j])

    def with_adjacency(self, adjacency):
        """Same labels and masses, new weights."""
        return Graph(adjacency, labels=self._labels, node_mass=self._mass)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._labels == other._labels
            and np.array_equal(self._adj, other._adj)
            and np.array_equal(self._mass, other._mass)
        )

    __hash__ = None

    def __repr__(self):
        n_edges = sum(1 for _ in self.edges())
        return f"Graph(n_nodes={self.n_nodes}, n_edges={n_edges})"


class Clustering:
    """A partition of a finite set of integer node ids into nonempty blocks."""

    __slots__ = ("_blocks", "_nodes")

    def __init__(self, blocks: Iterable[Iterable[int]] = ()):
        frozen = []
        seen = set()
        for block in blocks:
            b = frozenset(int(i) for i in block)
            if not b:
                raise InputError("clusters must be nonempty")
            if seen & b:
                raise InputError("clusters must be pairwise disjoint")
            seen |= b
            frozen.append(b)
        self._blocks = frozenset(frozen)
        self._nodes = frozenset(seen)

    @classmethod
    def from_labels(cls, labels: Sequence, nodes: Sequence[int] | None = None):
        """Group ``nodes`` (default ``0..len(labels)-1``) by equal label."""
        if nodes is None:
            nodes = range(len(labels))
        groups: dict = {}
        for node, lab in zip(nodes, labels):
            groups.setdefault(lab, []).append(node)
        return cls(groups.values())

    @classmethod
    def singletons(cls, nodes: Iterable[int]):
        return cls([i] for i in nodes)

    @classmethod
    def single(cls, nodes: Iterable[int]):
        nodes = list(nodes)
        return cls([nodes] if nodes else [])

    @property
    def blocks(self):
        return self._blocks

    @property
    def nodes(self):
        return self._nodes

    def sorted_blocks(self):
        """Blocks as sorted tuples, ordered by smallest member."""
        return sorted((tuple(sorted(b)) for b in self._blocks), key=lambda b: b[0])

    def to_labels(self, n=None):
        """Canonical restricted-growth label vector over ``0..n-1``."""
        if n is None:
            n = len(self._nodes)
        if self._nodes != frozenset(range(n)):
            raise InputError("clustering does not cover nodes 0..n-1")
        labels = [0] * n
        for k, block in enumerate(self.sorted_blocks()):
            for i in block:
                labels[i] = k
        return tuple(labels)

    def block_of(self, i):
        for b in self._blocks:
            if i in b:
                return b
        raise InputError(f"node {i} not in clustering")

    def same_cluster(self, i, j):
        return j in self.block_of(i)

    def __or__(self, other):
        if not isinstance(other, Clustering):
            return NotImplemented
        return Clustering(list(self._blocks) + list(other._blocks))

    def __iter__(self):
        return iter(frozenset(b) for b in self.sorted_blocks())

    def __len__(self):
        return len(self._blocks)

    def __eq__(self, other):
        if not isinstance(other, Clustering):
            return NotImplemented
        return self._blocks == other._blocks

    def __hash__(self):
        return hash(self._blocks)

    def __repr__(self):
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.sorted_blocks())
        return "{" + inner + "}"

    def format(self, graph: Graph | None = None):
        """Render as ``{{a,b},{c}}`` using graph labels when given."""
        if graph is None:
            return repr(self)
        inner = ",".join(
            "{" + ",".join(graph.labels[i] for i in b) + "}" for b in self.sorted_blocks()
        )
        return "{" + inner + "}"


@dataclass(frozen=True)
class ClusterStats:
    """Within weight, between weight, volume and mass of one node set."""

    within: float
    volume: float
    between: float
    mass: float


def _node_list(g: Graph, s) -> list:
    ids = []
    for i in s:
        if not isinstance(i, (int, np.integer)) or not 0 <= i < g.n_nodes:
            raise InputError(f"unknown node id {i!r}")
        ids.append(int(i))
    return ids


def volume(g: Graph, s) -> float:
    ids = _node_list(g, s)
    if not ids:
        return 0.0
    return math.fsum(g.adjacency[ids, :].ravel())


def within_weight(g: Graph, s) -> float:
    ids = _node_list(g, s)
    if not ids:
        return 0.0
    return math.fsum(g.adjacency[np.ix_(ids, ids)].ravel())


def cluster_stats(g: Graph, s) -> ClusterStats:
    ids = _node_list(g, s)
    w = within_weight(g, ids)
    v = volume(g, ids)
    mass = math.fsum(g.node_mass[ids]) if ids else 0.0
    # between computed independently so v = w + b holds to rounding
    outside = [j for j in range(g.n_nodes) if j not in set(ids)]
    b = math.fsum(g.adjacency[np.ix_(ids, outside)].ravel()) if ids and outside else 0.0
    return ClusterStats(within=w, volume=v, between=b, mass=mass)


def _check_partition_of(c: Clustering, g: Graph):
    if c.nodes != frozenset(range(g.n_nodes)):
        raise InputError("clustering is not a partition of the graph's nodes")


def scale_graph(g: Graph, alpha: float) -> Graph:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0:
        raise InputError(f"scale factor must be finite and positive, got {alpha}")
    return g.with_adjacency(g.adjacency * alpha)


def _as_bijection(f, n) -> np.ndarray:
    if isinstance(f, Mapping):
        perm = [f.get(i, None) for i in range(n)]
        if None in perm or len(f) != n:
            raise InputError("node map must be defined on every node")
    else:
        perm = list(f)
    if len(perm) != n or sorted(int(p) for p in perm) != list(range(n)):
        raise InputError("node map is not a bijection")
    return np.asarray(perm, dtype=int)


def permute_graph(g: Graph, f) -> Graph:
    """Relabel node ``i`` as ``f[i]``.

    The result satisfies ``E'(f(i), f(j)) = E(i, j)``. Node masses move with
    their nodes; positional labels are kept.
    """
    perm = _as_bijection(f, g.n_nodes)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    adj = g.adjacency[np.ix_(inv, inv)]
    return Graph(adj, labels=g.labels, node_mass=g.node_mass[inv])


def permute_clustering(c: Clustering, f) -> Clustering:
    perm = _as_bijection(f, len(f))
    if any(i >= len(perm) or i < 0 for i in c.nodes):
        raise InputError("node map does not cover the clustering's nodes")
    return Clustering([int(perm[i]) for i in b] for b in c.blocks)


def is_refinement(c: Clustering, d: Clustering) -> bool:
    """True iff every block of ``c`` lies inside some block of ``d``."""
    if c.nodes != d.nodes:
        raise InputError("clusterings partition different node sets")
    return all(any(b <= bd for bd in d.blocks) for b in c.blocks)


def check_agreement(g1: Graph, g2: Graph, va, neighborhood: bool = True) -> bool:
    """Do ``g1`` and ``g2`` agree on the labelled node set ``va``?

    Nodes are matched across graphs by label. With ``neighborhood=True``
    the weights from ``va`` to every common node must also match, and
    ``va`` must have no edges to nodes present in only one graph.
    """
    va = [str(x) for x in va]
    common = set(g1.labels) & set(g2.labels)
    missing = [x for x in va if x not in common]
    if missing:
        raise InputError(f"nodes {missing} are not in both graphs")
    a1 = g1.adjacency
    a2 = g2.adjacency
    for x in va:
        i1, i2 = g1.index(x), g2.index(x)
        targets = common if neighborhood else va
        for y in targets:
            if a1[i1, g1.index(y)] != a2[i2, g2.index(y)]:
                return False
        if neighborhood:
            for y in set(g1.labels) - common:
                if a1[i1, g1.index(y)] != 0:
                    return False
            for y in set(g2.labels) - common:
                if a2[i2, g2.index(y)] != 0:
                    return False
    return True


def _same_mask(c: Clustering, n: int) -> np.ndarray:
    labels = np.asarray(c.to_labels(n))
    return labels[:, None] == labels[None, :]


def is_consistent_improvement(g: Graph, g2: Graph, c: Clustering) -> bool:
    """True iff ``g2`` raises only within-``c`` and lowers only between-``c`` weights."""
    if g.n_nodes != g2.n_nodes:
        raise InputError("graphs have different node sets")
    _check_partition_of(c, g)
    same = _same_mask(c, g.n_nodes)
    e, e2 = g.adjacency, g2.adjacency
    return bool(np.all(e2[same] >= e[same]) and np.all(e2[~same] <= e[~same]))


def connected_components(g: Graph) -> Clustering:
    """Maximal node sets connected through positive-weight edges."""
    n = g.n_nodes
    if n == 0:
        return Clustering()
    _, labels = _cc(csr_matrix(g.adjacency > 0), directed=False)
    return Clustering.from_labels(labels.tolist())


def clique_graph(c: Clustering, k: float = 1.0, labels=None) -> Graph:
    """Weight ``k`` on every ordered pair inside a block (self loops included)."""
    k = float(k)
    if not math.isfinite(k) or k <= 0:
        raise InputError(f"clique weight must be finite and positive, got {k}")
    n = len(c.nodes)
    same = _same_mask(c, n)
    return Graph(np.where(same, k, 0.0), labels=labels)


def induced_subgraph(g: Graph, nodes) -> tuple[Graph, list]:
    """Subgraph on ``nodes`` with all edges leaving it dropped.

    Returns the subgraph and the list of original ids in subgraph order.
    """
    ids = sorted(_node_list(g, nodes))
    sub = Graph(
        g.adjacency[np.ix_(ids, ids)],
        labels=[g.labels[i] for i in ids],
        node_mass=g.node_mass[ids],
    )
    return sub, ids
