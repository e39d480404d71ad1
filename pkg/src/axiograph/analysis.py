"""Parameter-dependence experiments and closed forms for adaptive scale modularity.

The two-clique model is a 4-node graph: nodes ``x1, x2`` form one clique
and ``y1, y2`` the other, each clique holding within weight ``w``, with
total cross weight ``2b``. :func:`classify_outcome` labels the optimum as
1 (one cluster), 2 (one cluster per clique) or 3 (cliques split).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InputError, InvariantError, UnsupportedError
from .graph import Clustering, Graph, cluster_stats
from .io import format_number
from .optimize import TIE_TOLERANCE, optimize_exact
from .quality import QualitySpec, _summand, as_spec, evaluate

__all__ = [
    "SweepCell",
    "RingDemo",
    "CSV_HEADER",
    "DEFAULT_QGRID",
    "two_clique_graph",
    "canonical_two_clique_clusterings",
    "classify_outcome",
    "sweep",
    "default_wb_grid",
    "write_sweep_csv",
    "ring_of_cliques",
    "ring_resolution_demo",
    "adaptive_term",
    "adaptive_term_gradient",
    "adaptive_zero_closed_form",
    "zero_scale_score",
    "clique_term_bounds",
]

CSV_HEADER = ("M", "gamma", "w", "b", "q1", "q2", "q3", "outcome", "tie")
# (0, 0) is not a valid adaptive spec and is skipped
DEFAULT_QGRID = tuple((M, g) for M in (0.0, 10.0, 100.0) for g in (0.0, 0.5, 1.0, 2.0)
                      if not (M == 0 and g == 0))

TWO_CLIQUE_LABELS = ("x1", "x2", "y1", "y2")


# two-clique model -----------------------------------------------------------

def two_clique_graph(w: float, b: float) -> Graph:
    w, b = float(w), float(b)
    if not (math.isfinite(w) and w > 0):
        raise InputError(f"w must be positive, got {w}")
    if not (math.isfinite(b) and b >= 0):
        raise InputError(f"b must be nonnegative, got {b}")
    q, c = w / 4.0, b / 4.0
    adj = np.array([
        [q, q, c, c],
        [q, q, c, c],
        [c, c, q, q],
        [c, c, q, q],
    ])
    return Graph(adj, labels=TWO_CLIQUE_LABELS)


def canonical_two_clique_clusterings():
    """Single cluster, one cluster per clique, all singletons."""
    return (
        Clustering([[0, 1, 2, 3]]),
        Clustering([[0, 1], [2, 3]]),
        Clustering([[0], [1], [2], [3]]),
    )


@dataclass(frozen=True)
class SweepCell:
    spec: QualitySpec
    w: float
    b: float
    q1: float
    q2: float
    q3: float
    outcome: int
    tie: bool

    @property
    def M(self):
        return self.spec.M

    @property
    def gamma(self):
        return self.spec.gamma


def _outcome_class(c: Clustering) -> int:
    single, cliques, _ = canonical_two_clique_clusterings()
    if c == single:
        return 1
    if c == cliques:
        return 2
    return 3


def classify_outcome(spec, w: float, b: float) -> SweepCell:
    """Exhaustive argmax over the 15 partitions of the two-clique graph.

    When optima of different classes tie, the lowest class is reported and
    ``tie`` is set.
    """
    spec = as_spec(spec)
    g = two_clique_graph(w, b)
    res = optimize_exact(spec, g)
    classes = sorted({_outcome_class(c) for c in res.optima})
    q1, q2, q3 = (evaluate(spec, g, c) for c in canonical_two_clique_clusterings())
    return SweepCell(spec, float(w), float(b), q1, q2, q3, classes[0], len(classes) > 1)


def default_wb_grid(lo=1e-1, hi=1e4, num=25):
    return tuple(float(x) for x in np.logspace(math.log10(lo), math.log10(hi), num))


def sweep(qgrid, w_grid, b_grid) -> list:
    """One cell per ``(M, gamma, w, b)``, rows sorted in that order."""
    qgrid, w_grid, b_grid = list(qgrid), list(w_grid), list(b_grid)
    if not (qgrid and w_grid and b_grid):
        raise InputError("sweep grids must be nonempty")
    specs = sorted({(float(M), float(g)) for M, g in qgrid})
    cells = []
    for M, g in specs:
        spec = QualitySpec.adaptive_scale(M, g)
        for w in sorted(set(map(float, w_grid))):
            for b in sorted(set(map(float, b_grid))):
                cells.append(classify_outcome(spec, w, b))
    return cells


def write_sweep_csv(cells, fh, digits=12):
    out = csv.writer(fh, lineterminator="\n")
    out.writerow(CSV_HEADER)
    for c in cells:
        nums = (c.M, c.gamma, c.w, c.b, c.q1, c.q2, c.q3)
        out.writerow([format_number(x, digits) for x in nums] + [c.outcome, int(c.tie)])


# ring of cliques ------------------------------------------------------------

def ring_of_cliques(n: int, s: int) -> Graph:
    """``n`` unit-weight cliques of ``s`` nodes, neighbours joined by one edge."""
    if int(n) != n or int(s) != s:
        raise InputError("ring sizes must be integers")
    n, s = int(n), int(s)
    if n < 3 or s < 2:
        raise InputError(f"ring needs n >= 3 and s >= 2, got n={n}, s={s}")
    size = n * s
    adj = np.zeros((size, size))
    for t in range(n):
        block = slice(t * s, (t + 1) * s)
        adj[block, block] = 1.0
    np.fill_diagonal(adj, 0.0)
    for t in range(n):
        u, v = t * s, ((t + 1) % n) * s
        adj[u, v] = adj[v, u] = 1.0
    labels = [f"c{t}_{i}" for t in range(n) for i in range(s)]
    return Graph(adj, labels=labels)


@dataclass(frozen=True)
class RingDemo:
    spec: QualitySpec
    n: int
    s: int
    arcs: tuple
    quality: float
    clustering: Clustering

    @property
    def cliques_per_cluster(self):
        return max(self.arcs)


def _arc_term(spec, L, n, s, total):
    clique = s * (s - 1)
    if L == n:
        w = n * clique + 2 * n
        v = w
    else:
        w = L * clique + 2 * (L - 1)
        v = w + 2
    return _summand(spec, float(w), float(v), float(L * s), total)


def ring_resolution_demo(spec, n: int, s: int) -> RingDemo:
    """Best partition of the ring into contiguous arcs of whole cliques.

    Every arc of ``L < n`` cliques has the same statistics wherever it
    sits, so the search is a knapsack over arc lengths. Ties go to shorter
    arcs. The winning value is re-checked against :func:`evaluate`.
    """
    spec = as_spec(spec)
    if not spec.is_sum_form:
        raise UnsupportedError("ring demo needs a sum-form quality")
    g = ring_of_cliques(n, s)
    total = g.total_volume
    term = {L: _arc_term(spec, L, n, s, total) for L in range(1, n)}
    best = [0.0] + [-math.inf] * n
    choice = [0] * (n + 1)
    for m in range(1, n + 1):
        for L in range(1, m + 1):
            if L == n:
                continue
            cand = term[L] + best[m - L]
            if choice[m] == 0 or cand > best[m] + TIE_TOLERANCE * max(1.0, abs(best[m])):
                best[m], choice[m] = cand, L
    whole = _arc_term(spec, n, n, s, total)
    if whole > best[n] + TIE_TOLERANCE * max(1.0, abs(best[n])):
        arcs = (n,)
        value = whole
    else:
        parts, m = [], n
        while m:
            parts.append(choice[m])
            m -= choice[m]
        arcs = tuple(sorted(parts, reverse=True))
        value = best[n]
    blocks, start = [], 0
    for L in arcs:
        blocks.append(range(start * s, (start + L) * s))
        start += L
    clustering = Clustering(blocks)
    check = evaluate(spec, g, clustering)
    if abs(check - value) > 1e-9 * max(1.0, abs(value)):
        raise InvariantError(f"arc search value {value} disagrees with evaluation {check}")
    return RingDemo(spec, int(n), int(s), arcs, check, clustering)


# closed forms and bounds ------------------------------------------------------

def adaptive_term(w: float, b: float, M: float, gamma: float) -> float:
    """Adaptive-scale contribution of one cluster with within weight ``w`` and
    boundary weight ``b``."""
    return _summand(QualitySpec.adaptive_scale(M, gamma), w, w + b, 0.0, 0.0)


def adaptive_term_gradient(w: float, b: float, M: float, gamma: float):
    """Analytic partial derivatives of :func:`adaptive_term` in ``w`` and ``b``."""
    den = (M + gamma * w + gamma * b) ** 3
    dw = (M * M + (gamma - 2) * M * (w + b) + gamma * b * (M + gamma * w + gamma * b)) / den
    db = -(gamma * w * M + (w + b) * (2 * M + gamma * gamma * w)) / den
    return dw, db


def adaptive_zero_closed_form(g: Graph, c: Clustering, gamma: float) -> float:
    """``(1/gamma) * sum_c (w_c/v_c - 1/gamma)``, the ``M = 0`` adaptive form."""
    terms = []
    for block in c.blocks:
        st = cluster_stats(g, block)
        terms.append(st.within / st.volume - 1.0 / gamma if st.volume else 0.0)
    return math.fsum(terms) / gamma


def zero_scale_score(g: Graph, d: Clustering, beta: float) -> float:
    """``sum_d (w_d/v_d - beta)``; zero-volume clusters count as ``-beta``."""
    terms = []
    for block in d.blocks:
        st = cluster_stats(g, block)
        terms.append((st.within / st.volume if st.volume else 0.0) - beta)
    return math.fsum(terms)


def clique_term_bounds(w: float, v: float, M: float, beta: float, k: float):
    """Lower and upper bounds on ``q(d)/beta`` for a cluster of a clique graph
    with weight ``k``, where ``q`` uses ``gamma = 1/beta``."""
    base = w / v - beta
    return base - beta * M / k, base + 2 * beta * beta * M / k
