"""Property checks for clustering quality functions.

:func:`check_axiom` tests one property against one quality function. It
first replays known witnesses (the registry counterexamples and a few
analytic constructions), then runs seeded random trials. A falsification
always carries a witness that :func:`verify_witness` re-checks from
scratch. Richness is checked constructively: a witness graph is built per
target partition and confirmed by exhaustive search.

Random trials draw from ``numpy.random.default_rng([seed, trial])`` so each
trial is reproducible on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import counterexamples
from .exceptions import InputError, UnsupportedError
from .graph import (
    Clustering,
    Graph,
    check_agreement,
    clique_graph,
    induced_subgraph,
    is_consistent_improvement,
    permute_clustering,
    permute_graph,
    scale_graph,
)
from .io import serialize_graph
from .optimize import optimize_exact, rgs_array
from .quality import QualitySpec, as_spec, batch_quality, evaluate, family_scale_param

__all__ = [
    "AXIOMS",
    "NO_VIOLATION",
    "FALSIFIED",
    "WITNESS_VERIFIED",
    "UNSUPPORTED",
    "AgreementScenario",
    "AxiomReport",
    "RichnessWitness",
    "Witness",
    "build_richness_witness",
    "check_axiom",
    "gen_agreement_scenario",
    "gen_consistent_improvement",
    "maxfrac",
    "random_clustering",
    "random_graph",
    "verify_richness_witness",
    "verify_witness",
]

AXIOMS = (
    "permutation",
    "scale",
    "scale-family",
    "richness",
    "monotonicity",
    "relative-monotonicity",
    "locality",
    "continuity",
    "rlf",
)

NO_VIOLATION = "no-violation"
FALSIFIED = "falsified"
WITNESS_VERIFIED = "witness-verified"
UNSUPPORTED = "unsupported"

VALUE_TOL = 1e-12
ORDER_TOL = 1e-9
CONTINUITY_DELTAS = (1e-2, 1e-4, 1e-6)
CONTINUITY_EPS = 1e-3
MIN_DEGREE = 0.1
RICHNESS_MAX_NODES = 7
RLF_MAX_NODES = 8


def _tol(rel, *values):
    return rel * max(1.0, *(abs(v) for v in values))


# data types ---------------------------------------------------------------

@dataclass
class Witness:
    """Everything needed to re-check one violation."""

    source: str
    graphs: dict = field(default_factory=dict)
    clusterings: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    relation: str = ""

    def to_dict(self):
        return {
            "source": self.source,
            "relation": self.relation,
            "graphs": {k: serialize_graph(g) for k, g in self.graphs.items()},
            "clusterings": {k: [list(b) for b in c.sorted_blocks()]
                            for k, c in self.clusterings.items()},
            "values": dict(self.values),
            "params": {k: (str(v) if isinstance(v, QualitySpec) else v)
                       for k, v in self.params.items()},
        }


@dataclass
class AxiomReport:
    axiom: str
    spec: QualitySpec
    verdict: str
    seed: int
    trials: int
    max_nodes: int
    trials_run: int = 0
    witness: Witness | None = None
    note: str = ""

    def format_line(self):
        parts = [f"{self.axiom:<22}", f"{str(self.spec):<16}", f"{self.verdict:<16}",
                 f"trials={self.trials_run}/{self.trials}", f"seed={self.seed}"]
        if self.witness is not None:
            parts.append(f"witness={self.witness.source}")
        if self.note:
            parts.append(f"note={self.note}")
        return " ".join(parts)

    def to_dict(self):
        return {
            "axiom": self.axiom,
            "spec": str(self.spec),
            "verdict": self.verdict,
            "seed": self.seed,
            "trials": self.trials,
            "trials_run": self.trials_run,
            "max_nodes": self.max_nodes,
            "note": self.note,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


@dataclass(frozen=True)
class AgreementScenario:
    """Two graphs agreeing on ``va`` and its neighborhood.

    The shared nodes ``va`` carry ids ``0..len(va)-1`` in both graphs, so
    ``ca`` and ``da`` are valid in either. ``c1`` and ``c2`` cover the
    remaining ids of ``g1`` and ``g2``.
    """

    g1: Graph
    g2: Graph
    va: tuple
    ca: Clustering
    da: Clustering
    c1: Clustering
    c2: Clustering


@dataclass(frozen=True)
class RichnessWitness:
    target: Clustering
    graph: Graph
    k: float
    beta: float | None = None
    epsilon: float | None = None


# random generators --------------------------------------------------------

def _trial_rng(seed, trial):
    return np.random.default_rng([int(seed), int(trial)])


def _as_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_graph(rng, max_nodes, min_nodes=2, min_degree=0.0):
    """Edges with probability 0.5, weights in (0, 1], self loops with probability 0.3.

    Nodes whose degree falls below ``min_degree`` get a self loop topped up
    to reach it.
    """
    n = int(rng.integers(min_nodes, max_nodes + 1))
    adj = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            p = 0.3 if i == j else 0.5
            if rng.random() < p:
                adj[i, j] = adj[j, i] = 1.0 - rng.random()
    if min_degree > 0:
        deg = adj.sum(axis=1)
        for i in np.nonzero(deg < min_degree)[0]:
            adj[i, i] += min_degree - deg[i]
    return Graph(adj)


def random_clustering(rng, nodes):
    nodes = list(nodes)
    if not nodes:
        return Clustering()
    k = int(rng.integers(1, len(nodes) + 1))
    labels = rng.integers(0, k, size=len(nodes)).tolist()
    return Clustering.from_labels(labels, nodes)


def gen_consistent_improvement(g: Graph, c: Clustering, seed=None) -> Graph:
    """Random ``c``-consistent improvement of ``g`` differing in at least one pair.

    Within-cluster pairs may only gain weight, between-cluster pairs may
    only lose it (never below zero).
    """
    rng = _as_rng(seed)
    n = g.n_nodes
    labels = np.asarray(c.to_labels(n))
    adj = g.adjacency.copy()
    pairs = [(i, j) for i in range(n) for j in range(i, n)
             if labels[i] == labels[j] or adj[i, j] > 0]
    count = int(rng.integers(1, len(pairs) + 1))
    chosen = rng.choice(len(pairs), size=count, replace=False)
    for idx in sorted(chosen.tolist()):
        i, j = pairs[idx]
        if labels[i] == labels[j]:
            new = adj[i, j] + (1.0 - rng.random())
        else:
            new = adj[i, j] * rng.random()
        adj[i, j] = adj[j, i] = new
    return g.with_adjacency(adj)


def _relative_improvement(g: Graph, c: Clustering, d: Clustering, rng):
    """Graph that is a ``c``-consistent improvement of ``g`` while ``g`` is a
    ``d``-consistent improvement of it, or None when no pair can change."""
    n = g.n_nodes
    lc = np.asarray(c.to_labels(n))
    ld = np.asarray(d.to_labels(n))
    adj = g.adjacency.copy()
    up, down = [], []
    for i in range(n):
        for j in range(i, n):
            if lc[i] == lc[j] and ld[i] != ld[j]:
                up.append((i, j))
            elif lc[i] != lc[j] and ld[i] == ld[j] and adj[i, j] > 0:
                down.append((i, j))
    pairs = up + down
    if not pairs:
        return None
    count = int(rng.integers(1, len(pairs) + 1))
    for idx in sorted(rng.choice(len(pairs), size=count, replace=False).tolist()):
        i, j = pairs[idx]
        if idx < len(up):
            adj[i, j] += 1.0 - rng.random()
        else:
            adj[i, j] *= rng.random()
        adj[j, i] = adj[i, j]
    return g.with_adjacency(adj)


def gen_agreement_scenario(seed=None, max_nodes=6) -> AgreementScenario:
    """Random pair of graphs agreeing on a core set and its neighborhood.

    Layout per graph: core nodes ``a*`` (ids first), shared boundary nodes
    ``b*``, then nodes ``p*`` only in ``g1`` or ``q*`` only in ``g2``. Core
    weights and core-boundary weights are shared; every other weight is
    drawn separately per graph, and core nodes never touch exclusive nodes.
    """
    if max_nodes < 3:
        raise InputError("agreement scenarios need max_nodes >= 3")
    rng = _as_rng(seed)
    n_core = int(rng.integers(2, max_nodes))
    n_bound = int(rng.integers(0, max_nodes - n_core + 1))
    room = max_nodes - n_core - n_bound
    n_x1 = int(rng.integers(0, room + 1))
    n_x2 = int(rng.integers(0, room + 1))

    def draw(p):
        return 1.0 - rng.random() if rng.random() < p else 0.0

    shared = n_core + n_bound
    core = np.zeros((shared, shared))
    for i in range(n_core):
        for j in range(i, shared):
            core[i, j] = core[j, i] = draw(0.3 if i == j else 0.5)

    def extend(n_extra):
        n = shared + n_extra
        adj = np.zeros((n, n))
        adj[:shared, :shared] = core
        for i in range(n_core, n):
            for j in range(max(i, n_core), n):
                adj[i, j] = adj[j, i] = draw(0.3 if i == j else 0.5)
        return adj

    core_labels = [f"a{i}" for i in range(n_core)] + [f"b{i}" for i in range(n_bound)]
    g1 = Graph(extend(n_x1), labels=core_labels + [f"p{i}" for i in range(n_x1)])
    g2 = Graph(extend(n_x2), labels=core_labels + [f"q{i}" for i in range(n_x2)])
    ca = random_clustering(rng, range(n_core))
    da = random_clustering(rng, range(n_core))
    while da == ca:
        da = random_clustering(rng, range(n_core))
    c1 = random_clustering(rng, range(n_core, g1.n_nodes))
    c2 = random_clustering(rng, range(n_core, g2.n_nodes))
    return AgreementScenario(g1, g2, tuple(core_labels[:n_core]), ca, da, c1, c2)


# richness -----------------------------------------------------------------

def maxfrac(c: Clustering, d) -> float:
    """Largest fraction of any block of ``c`` that lies inside ``d``."""
    d = frozenset(d)
    if not d:
        raise InputError("d must be nonempty")
    if not d <= c.nodes:
        raise InputError("d is not a subset of the clustered nodes")
    return max(len(b & d) / len(b) for b in c.blocks)


def _next_power_of_ten_above(x):
    if x < 1:
        return 1.0
    return 10.0 ** (math.floor(math.log10(x)) + 1)


def _power_of_ten_below(x):
    k = 10.0 ** math.floor(math.log10(x))
    return k / 10.0 if k >= x else k


def _complete_graph(n):
    return Graph(np.ones((n, n)) - np.eye(n))


def _dominated_by_single_cluster(spec):
    """Specs under which the one-cluster partition is never beaten."""
    if spec.kind == "withinsum":
        return True
    if spec.kind == "cpm" and spec.gamma == 0:
        return True
    return spec.kind == "adaptive" and spec.M == 0 and spec.gamma <= 1


def build_richness_witness(spec, target: Clustering) -> RichnessWitness:
    """A graph on which ``target`` should be the unique optimum of ``spec``.

    Raises :class:`UnsupportedError` when no construction is known.
    """
    spec = as_spec(spec)
    n = len(target.nodes)
    if n == 0:
        raise InputError("target must cover at least one node")
    target.to_labels(n)
    whole = len(target) == 1
    sizes = [len(b) for b in target.blocks]
    if spec.kind == "modularity":
        if whole and n > 1:
            return RichnessWitness(target, _complete_graph(n), 1.0)
        return RichnessWitness(target, clique_graph(target, 1.0), 1.0)
    if spec.kind == "adaptive":
        if spec.gamma <= 1:
            raise UnsupportedError(f"no richness construction for {spec} (needs gamma > 1)")
        beta = 1.0 / spec.gamma
        eps = min(beta, 1.0 - beta, 1.0 / n) / 2.0
        k = 1.0 if spec.M == 0 else _next_power_of_ten_above(3 * n * beta ** 2 * spec.M / eps)
        return RichnessWitness(target, clique_graph(target, k), k, beta, eps)
    if spec.kind == "cpm":
        if spec.gamma <= 0:
            raise UnsupportedError("no richness construction for cpm with gamma = 0")
        k = _next_power_of_ten_above(spec.gamma * max(sizes) ** 2)
        return RichnessWitness(target, clique_graph(target, k), k)
    if spec.kind == "fixed":
        k = _power_of_ten_below(spec.M / max(sizes) ** 2)
        return RichnessWitness(target, clique_graph(target, k), k)
    if spec.kind == "rb":
        if whole and n > 1:
            if spec.gamma < n / (n - 1):
                return RichnessWitness(target, _complete_graph(n), 1.0)
        elif whole or spec.gamma * max(sizes) ** 2 < sum(s * s for s in sizes):
            return RichnessWitness(target, clique_graph(target, 1.0), 1.0)
        raise UnsupportedError(f"no richness construction for {spec} and this target")
    if spec.kind == "coco":
        return RichnessWitness(target, clique_graph(target, 1.0), 1.0)
    raise UnsupportedError(f"no richness construction for {spec}")


def verify_richness_witness(spec, witness: RichnessWitness):
    """Exhaustive check; returns ``(ok, OptimizeResult)``."""
    res = optimize_exact(spec, witness.graph)
    return res.unique and res.best == witness.target, res


# per-axiom trials -----------------------------------------------------------

def _trial_permutation(spec, rng, max_nodes):
    g = random_graph(rng, max_nodes)
    c = random_clustering(rng, g.nodes)
    f = rng.permutation(g.n_nodes).tolist()
    gp, cp = permute_graph(g, f), permute_clustering(c, f)
    q, qp = evaluate(spec, g, c), evaluate(spec, gp, cp)
    if abs(q - qp) > _tol(VALUE_TOL, q, qp):
        return Witness("trial", graphs={"G": g, "f(G)": gp}, clusterings={"C": c, "f(C)": cp},
                       values={"Q(G,C)": q, "Q(f(G),f(C))": qp}, params={"f": f},
                       relation="Q(G,C) != Q(f(G),f(C))")
    return None


def _order_flip(q, qs):
    """First pair (i, j) with q[i] < q[j] strictly but qs[i] > qs[j] strictly."""
    ti = ORDER_TOL * np.maximum(1.0, np.abs(q))
    tis = ORDER_TOL * np.maximum(1.0, np.abs(qs))
    less = q[:, None] < q[None, :] - ti[None, :]
    more = qs[:, None] > qs[None, :] + tis[None, :]
    hits = np.argwhere(less & more)
    if len(hits) == 0:
        return None
    return tuple(int(x) for x in hits[0])


def _trial_scale(spec, rng, max_nodes, family):
    g = random_graph(rng, max_nodes)
    alpha = float(10.0 ** rng.uniform(-3, 3))
    scaled_spec = family_scale_param(spec, alpha) if family else spec
    gs = scale_graph(g, alpha)
    rgs = rgs_array(g.n_nodes)
    q = batch_quality(spec, g, rgs)
    qs = batch_quality(scaled_spec, gs, rgs)
    hit = _order_flip(q, qs)
    if hit is None:
        return None
    c1, c2 = (Clustering.from_labels(rgs[i].tolist()) for i in hit)
    return Witness(
        "trial", graphs={"G": g, "aG": gs}, clusterings={"C1": c1, "C2": c2},
        values={"Q(G,C1)": evaluate(spec, g, c1), "Q(G,C2)": evaluate(spec, g, c2),
                "Q'(aG,C1)": evaluate(scaled_spec, gs, c1),
                "Q'(aG,C2)": evaluate(scaled_spec, gs, c2)},
        params={"alpha": alpha, "scaled_spec": scaled_spec},
        relation="Q(G,C1) < Q(G,C2) but Q'(aG,C1) > Q'(aG,C2)")


def _monotonicity_witness(spec, g, g2, c, source):
    q, q2 = evaluate(spec, g, c), evaluate(spec, g2, c)
    if q2 < q - _tol(VALUE_TOL, q, q2):
        return Witness(source, graphs={"G": g, "G'": g2}, clusterings={"C": c},
                       values={"Q(G,C)": q, "Q(G',C)": q2},
                       relation="G' is a C-consistent improvement of G but Q(G',C) < Q(G,C)")
    return None


def _trial_monotonicity(spec, rng, max_nodes):
    g = random_graph(rng, max_nodes)
    c = random_clustering(rng, g.nodes)
    return _monotonicity_witness(spec, g, gen_consistent_improvement(g, c, rng), c, "trial")


def _relative_witness(spec, g, g2, c, d, source):
    qc, qd = evaluate(spec, g, c), evaluate(spec, g, d)
    qc2, qd2 = evaluate(spec, g2, c), evaluate(spec, g2, d)
    if qc >= qd - _tol(ORDER_TOL, qc, qd) and qc2 < qd2 - _tol(ORDER_TOL, qc2, qd2):
        return Witness(source, graphs={"G": g, "G'": g2}, clusterings={"C": c, "D": d},
                       values={"Q(G,C)": qc, "Q(G,D)": qd, "Q(G',C)": qc2, "Q(G',D)": qd2},
                       relation="Q(G,C) >= Q(G,D) but Q(G',C) < Q(G',D)")
    return None


def _trial_relative(spec, rng, max_nodes):
    g = random_graph(rng, max_nodes)
    c = random_clustering(rng, g.nodes)
    d = random_clustering(rng, g.nodes)
    g2 = _relative_improvement(g, c, d, rng)
    if g2 is None:
        return None
    return _relative_witness(spec, g, g2, c, d, "trial")


def _locality_witness(spec, sc: AgreementScenario, source):
    q1c = evaluate(spec, sc.g1, sc.ca | sc.c1)
    q1d = evaluate(spec, sc.g1, sc.da | sc.c1)
    q2c = evaluate(spec, sc.g2, sc.ca | sc.c2)
    q2d = evaluate(spec, sc.g2, sc.da | sc.c2)
    t1, t2 = _tol(ORDER_TOL, q1c, q1d), _tol(ORDER_TOL, q2c, q2d)
    forward = q1c >= q1d - t1 and q2c < q2d - t2
    backward = q2c >= q2d - t2 and q1c < q1d - t1
    if not (forward or backward):
        return None
    return Witness(
        source, graphs={"G1": sc.g1, "G2": sc.g2},
        clusterings={"Ca": sc.ca, "Da": sc.da, "C1": sc.c1, "C2": sc.c2},
        values={"Q(G1,Ca+C1)": q1c, "Q(G1,Da+C1)": q1d,
                "Q(G2,Ca+C2)": q2c, "Q(G2,Da+C2)": q2d},
        params={"Va": list(sc.va)},
        relation="Ca vs Da preference differs between G1 and G2")


def _trial_locality(spec, rng, max_nodes):
    return _locality_witness(spec, gen_agreement_scenario(rng, max(3, max_nodes)), "trial")


def _perturb(g, delta, rng):
    n = g.n_nodes
    noise = rng.uniform(-delta, delta, size=(n, n))
    noise = np.triu(noise) + np.triu(noise, 1).T
    return g.with_adjacency(np.maximum(g.adjacency + noise, 0.0))


def _partition_sample(n, rng, limit=5000, size=2000):
    rgs = rgs_array(n)
    if len(rgs) > limit:
        rgs = rgs[np.sort(rng.choice(len(rgs), size=size, replace=False))]
    return rgs


def _trial_continuity(spec, rng, max_nodes):
    min_degree = MIN_DEGREE if spec.is_ratio_based else 0.0
    g = random_graph(rng, max_nodes, min_degree=min_degree)
    rgs = _partition_sample(g.n_nodes, rng)
    q = batch_quality(spec, g, rgs)
    gaps = {}
    for delta in CONTINUITY_DELTAS:
        gd = _perturb(g, delta, rng)
        diff = np.abs(batch_quality(spec, gd, rgs) - q)
        k = int(np.argmax(diff))
        gaps[delta] = (float(diff[k]), gd, k)
    gap, gd, k = gaps[CONTINUITY_DELTAS[-1]]
    if gap < CONTINUITY_EPS:
        return None
    c = Clustering.from_labels(rgs[k].tolist())
    return Witness(
        "trial", graphs={"G": g, "G'": gd}, clusterings={"C": c},
        values={"Q(G,C)": evaluate(spec, g, c), "Q(G',C)": evaluate(spec, gd, c),
                **{f"max|dQ| at delta={d:g}": gaps[d][0] for d in CONTINUITY_DELTAS}},
        params={"delta": CONTINUITY_DELTAS[-1], "epsilon": CONTINUITY_EPS},
        relation="weights moved by < delta but |Q(G',C) - Q(G,C)| >= epsilon")


def _trial_rlf(spec, rng, max_nodes):
    g = random_graph(rng, min(max_nodes, RLF_MAX_NODES))
    opt = optimize_exact(spec, g)
    c = opt.best
    blocks = c.sorted_blocks()
    for r in range(1, len(blocks)):
        for subset in combinations(range(len(blocks)), r):
            chosen = [blocks[i] for i in subset]
            nodes = sorted(i for b in chosen for i in b)
            sub, ids = induced_subgraph(g, nodes)
            pos = {old: new for new, old in enumerate(ids)}
            d = Clustering([pos[i] for i in b] for b in chosen)
            qd = evaluate(spec, sub, d)
            sub_opt = optimize_exact(spec, sub)
            if qd < sub_opt.best_quality - _tol(ORDER_TOL, qd, sub_opt.best_quality):
                return Witness(
                    "trial", graphs={"G": g, "G[D]": sub},
                    clusterings={"C": c, "D": d, "better": sub_opt.best},
                    values={"Q(G,C)": opt.best_quality, "Q(G[D],D)": qd,
                            "Q(G[D],better)": sub_opt.best_quality},
                    relation="C optimal on G but D not optimal on the subgraph induced by D")
    return None


# known witnesses ------------------------------------------------------------

def _registry_locality():
    case = counterexamples.locality_pair()
    cl = case.clusterings
    return AgreementScenario(case.graphs["G1"], case.graphs["G2"], ("a", "b"),
                             cl["Ca"], cl["Da"], cl["C1"], cl["C2"])


def _known_witnesses(axiom, spec):
    """Yield ``Witness`` objects for violations found in fixed constructions."""
    if axiom == "locality":
        w = _locality_witness(spec, _registry_locality(), "registry:locality")
        if w:
            yield w
    elif axiom == "monotonicity":
        case = counterexamples.counterexample_suite()[2]
        w = _monotonicity_witness(spec, case.graphs["G"], case.graphs["G'"],
                                  case.clusterings["C"], "registry:monotonicity")
        if w:
            yield w
        fixed_m = spec.M if (spec.kind == "fixed" or
                             (spec.kind == "adaptive" and spec.gamma == 0)) else None
        if fixed_m:
            # one cluster whose volume already exceeds M/2; raising its loop lowers Q
            g = Graph([[fixed_m]], labels=["x"])
            g2 = Graph([[2 * fixed_m]], labels=["x"])
            w = _monotonicity_witness(spec, g, g2, Clustering([[0]]),
                                      "analytic:within-derivative")
            if w:
                w.params["2*v_c"] = 2 * fixed_m
                w.params["M"] = fixed_m
                yield w
    elif axiom == "relative-monotonicity":
        case = counterexamples.counterexample_suite()[3]
        w = _relative_witness(spec, case.graphs["G"], case.graphs["G'"],
                              case.clusterings["C"], case.clusterings["D"],
                              "registry:relative-monotonicity")
        if w:
            yield w
    elif axiom == "continuity" and spec.kind == "coco":
        delta = CONTINUITY_DELTAS[-1]
        g = Graph(np.zeros((2, 2)), labels=["a", "b"])
        gd = Graph([[0.0, delta], [delta, 0.0]], labels=["a", "b"])
        c = Clustering([[0], [1]])
        q, qd = evaluate(spec, g, c), evaluate(spec, gd, c)
        if abs(q - qd) >= CONTINUITY_EPS:
            yield Witness("analytic:cross-edge", graphs={"G": g, "G'": gd},
                          clusterings={"C": c}, values={"Q(G,C)": q, "Q(G',C)": qd},
                          params={"delta": delta, "epsilon": CONTINUITY_EPS},
                          relation="weights moved by < delta but |Q(G',C) - Q(G,C)| >= epsilon")


# richness check -------------------------------------------------------------

def _check_richness(spec, trials, seed, max_nodes):
    cap = min(max_nodes, RICHNESS_MAX_NODES)
    if _dominated_by_single_cluster(spec):
        for trial in range(trials):
            rng = _trial_rng(seed, trial)
            g = random_graph(rng, min(cap, 6))
            rgs = rgs_array(g.n_nodes)
            q = batch_quality(spec, g, rgs)
            if q.max() > q[0] + _tol(ORDER_TOL, q.max(), q[0]):
                return FALSIFIED, None, trial + 1, "single-cluster dominance failed"
        whole = Clustering.single(g.nodes)
        target = Clustering.singletons(g.nodes)
        w = Witness(
            "analytic:single-cluster-dominance", graphs={"G": g},
            clusterings={"target": target, "better": whole},
            values={"Q(G,target)": evaluate(spec, g, target),
                    "Q(G,better)": evaluate(spec, g, whole)},
            relation="every cluster term is maximal when all nodes share one cluster, "
                     "so no target other than {V} is ever the unique optimum")
        return FALSIFIED, w, trials, f"dominance checked exhaustively on {trials} graphs"
    for trial in range(trials):
        rng = _trial_rng(seed, trial)
        n = int(rng.integers(2, cap + 1))
        target = random_clustering(rng, range(n))
        try:
            rw = build_richness_witness(spec, target)
        except UnsupportedError as exc:
            return UNSUPPORTED, None, trial, str(exc)
        ok, res = verify_richness_witness(spec, rw)
        if not ok:
            better = next(c for c in res.optima if c != target)
            w = Witness(f"trial {trial}", graphs={"G": rw.graph},
                        clusterings={"target": target, "better": better},
                        values={"Q(G,target)": evaluate(spec, rw.graph, target),
                                "Q(G,better)": evaluate(spec, rw.graph, better)},
                        params={"k": rw.k},
                        relation="witness graph does not make the target the unique optimum")
            return FALSIFIED, w, trial + 1, "constructed witness failed"
    return WITNESS_VERIFIED, None, trials, ""


_TRIALS = {
    "permutation": _trial_permutation,
    "scale": lambda s, r, m: _trial_scale(s, r, m, family=False),
    "scale-family": lambda s, r, m: _trial_scale(s, r, m, family=True),
    "monotonicity": _trial_monotonicity,
    "relative-monotonicity": _trial_relative,
    "locality": _trial_locality,
    "continuity": _trial_continuity,
    "rlf": _trial_rlf,
}


def check_axiom(axiom: str, spec, trials: int = 200, seed: int = 0,
                max_nodes: int = 6) -> AxiomReport:
    """Search for a violation of ``axiom`` by ``spec``.

    Verdicts: ``falsified`` (with a re-checkable witness), ``no-violation``
    after ``trials`` random trials, ``witness-verified`` for richness
    confirmed on every sampled target, or ``unsupported``.
    """
    spec = as_spec(spec)
    if axiom not in AXIOMS:
        raise InputError(f"unknown axiom {axiom!r}; expected one of {', '.join(AXIOMS)}")
    if trials < 1:
        raise InputError("trials must be at least 1")
    if max_nodes < 2:
        raise InputError("max_nodes must be at least 2")
    report = AxiomReport(axiom, spec, NO_VIOLATION, seed, trials, max_nodes)

    if axiom == "scale-family" and spec.is_parameter_free:
        report.verdict = UNSUPPORTED
        report.note = "parameter-free quality; see the scale axiom"
        return report
    if axiom == "richness":
        verdict, witness, run, note = _check_richness(spec, trials, seed, max_nodes)
        report.verdict, report.witness, report.trials_run, report.note = verdict, witness, run, note
        return report

    for witness in _known_witnesses(axiom, spec):
        report.verdict = FALSIFIED
        report.witness = witness
        return report

    run = _TRIALS[axiom]
    for trial in range(trials):
        witness = run(spec, _trial_rng(seed, trial), max_nodes)
        if witness is not None:
            witness.source = f"trial {trial}"
            report.verdict = FALSIFIED
            report.witness = witness
            report.trials_run = trial + 1
            return report
    report.trials_run = trials
    if axiom == "continuity" and spec.is_ratio_based:
        report.note = f"graphs restricted to node degree >= {MIN_DEGREE}"
    return report


# independent re-check -------------------------------------------------------

def verify_witness(report: AxiomReport) -> bool:
    """Re-evaluate the violated relation of a falsified report from scratch."""
    w = report.witness
    if report.verdict != FALSIFIED or w is None:
        return False
    spec = report.spec
    G, C, P = w.graphs, w.clusterings, w.params
    ax = report.axiom
    if ax == "permutation":
        f = P["f"]
        q = evaluate(spec, G["G"], C["C"])
        qp = evaluate(spec, permute_graph(G["G"], f), permute_clustering(C["C"], f))
        return abs(q - qp) > _tol(VALUE_TOL, q, qp)
    if ax in ("scale", "scale-family"):
        alpha = P["alpha"]
        spec2 = family_scale_param(spec, alpha) if ax == "scale-family" else spec
        gs = scale_graph(G["G"], alpha)
        q1, q2 = evaluate(spec, G["G"], C["C1"]), evaluate(spec, G["G"], C["C2"])
        s1, s2 = evaluate(spec2, gs, C["C1"]), evaluate(spec2, gs, C["C2"])
        return q1 < q2 - _tol(ORDER_TOL, q2) and s1 > s2 + _tol(ORDER_TOL, s2)
    if ax == "monotonicity":
        g, g2, c = G["G"], G["G'"], C["C"]
        return (is_consistent_improvement(g, g2, c)
                and _monotonicity_witness(spec, g, g2, c, "") is not None)
    if ax == "relative-monotonicity":
        g, g2, c, d = G["G"], G["G'"], C["C"], C["D"]
        return (is_consistent_improvement(g, g2, c) and is_consistent_improvement(g2, g, d)
                and _relative_witness(spec, g, g2, c, d, "") is not None)
    if ax == "locality":
        sc = AgreementScenario(G["G1"], G["G2"], tuple(P["Va"]),
                               C["Ca"], C["Da"], C["C1"], C["C2"])
        return (check_agreement(sc.g1, sc.g2, sc.va, neighborhood=True)
                and _locality_witness(spec, sc, "") is not None)
    if ax == "continuity":
        g, gd, c = G["G"], G["G'"], C["C"]
        close = np.max(np.abs(g.adjacency - gd.adjacency)) <= P["delta"]
        jump = abs(evaluate(spec, gd, c) - evaluate(spec, g, c)) >= P["epsilon"]
        return bool(close and jump)
    if ax == "richness":
        g = G["G"]
        qt, qb = evaluate(spec, g, C["target"]), evaluate(spec, g, C["better"])
        return C["target"] != C["better"] and qt <= qb + _tol(ORDER_TOL, qt, qb)
    if ax == "rlf":
        sub = G["G[D]"]
        qd, qb = evaluate(spec, sub, C["D"]), evaluate(spec, sub, C["better"])
        return qd < qb - _tol(ORDER_TOL, qd, qb)
    return False
