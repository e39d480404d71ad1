"""Registry of the small graphs on which modularity misbehaves.

Each scenario carries its graphs, the clusterings that matter, and the
expected modularity values as exact fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Clustering, Graph
from .quality import QualitySpec, evaluate

__all__ = ["Counterexample", "ExpectedValue", "counterexample_suite", "check_suite", "locality_pair"]


@dataclass(frozen=True)
class ExpectedValue:
    graph: str
    clustering: str
    value: Fraction
    note: str = ""


@dataclass(frozen=True)
class Counterexample:
    name: str
    property: str
    graphs: dict
    clusterings: dict
    expected: tuple
    notes: tuple = field(default_factory=tuple)


def _locality():
    g1 = Graph.from_edges(["a", "b"], [("a", "b", 1), ("a", "a", 2), ("b", "b", 2)])
    g2 = Graph.from_edges(
        ["a", "b", "c"], [("a", "b", 1), ("a", "a", 2), ("b", "b", 2), ("c", "c", 4)]
    )
    ca = Clustering([[0], [1]])
    da = Clustering([[0, 1]])
    c2 = Clustering([[2]])
    return Counterexample(
        name="locality",
        property="locality",
        graphs={"G1": g1, "G2": g2},
        clusterings={
            "Ca": ca, "Da": da, "C1": Clustering(), "C2": c2,
            "Ca+C1": ca, "Da+C1": da, "Ca+C2": ca | c2, "Da+C2": da | c2,
        },
        expected=(
            ExpectedValue("G1", "Ca+C1", Fraction(1, 6)),
            ExpectedValue("G1", "Da+C1", Fraction(0)),
            ExpectedValue("G2", "Ca+C2", Fraction(23, 50)),
            ExpectedValue("G2", "Da+C2", Fraction(24, 50)),
        ),
        notes=("agree on Va = {a, b} and its neighborhood",),
    )


def _monotonicity():
    nodes = ["a", "b", "c"]
    g = Graph.from_edges(nodes, [("a", "b", 1), ("c", "c", 2)])
    g_improved = Graph.from_edges(nodes, [("c", "c", 2)])
    return Counterexample(
        name="monotonicity",
        property="monotonicity",
        graphs={"G": g, "G'": g_improved},
        clusterings={"C": Clustering([[0], [1], [2]])},
        expected=(
            ExpectedValue("G", "C", Fraction(1, 8)),
            ExpectedValue("G'", "C", Fraction(0)),
        ),
        notes=("G' is a C-consistent improvement of G (between edge a-b removed)",),
    )


def _relative_monotonicity():
    nodes = ["a", "b", "c", "d"]
    g = Graph.from_edges(nodes, [("a", "b", 1), ("c", "c", 8), ("d", "d", 1)])
    g_improved = Graph.from_edges(nodes, [("a", "b", 2), ("c", "c", 8), ("d", "d", 1)])
    return Counterexample(
        name="relative-monotonicity",
        property="relative-monotonicity",
        graphs={"G": g, "G'": g_improved},
        clusterings={"C": Clustering([[0, 1, 2], [3]]), "D": Clustering([[0], [1], [2, 3]])},
        expected=(
            ExpectedValue("G", "C", Fraction(20, 121)),
            ExpectedValue("G", "D", Fraction(16, 121)),
            ExpectedValue("G'", "C", Fraction(24, 169)),
            ExpectedValue("G'", "D", Fraction(28, 169),
                          note="published as 28/121; recomputed 28/169 (order unchanged)"),
        ),
        notes=(
            "G' is a C-consistent improvement of G",
            "G is a D-consistent improvement of G'",
        ),
    )


def locality_pair():
    """Both locality graphs with their clusterings, as one scenario."""
    return _locality()


def counterexample_suite():
    """Four scenarios holding ten expected modularity values.

    The locality pair is split per graph so each scenario is one graph
    family; :func:`locality_pair` keeps them together.
    """
    loc = _locality()
    parts = []
    for gname, keys, values in (("G1", ("Ca+C1", "Da+C1"), loc.expected[:2]),
                                ("G2", ("Ca+C2", "Da+C2"), loc.expected[2:])):
        parts.append(Counterexample(
            name=f"locality-{gname}",
            property="locality",
            graphs={gname: loc.graphs[gname]},
            clusterings={k: loc.clusterings[k] for k in keys},
            expected=values,
            notes=loc.notes,
        ))
    return (*parts, _monotonicity(), _relative_monotonicity())


def check_suite(tol=1e-12):
    """Evaluate every expected value; rows of ``(scenario, graph, clustering,
    computed, expected, ok, note)``."""
    spec = QualitySpec.modularity()
    rows = []
    for case in counterexample_suite():
        for ev in case.expected:
            got = evaluate(spec, case.graphs[ev.graph], case.clusterings[ev.clustering])
            ok = abs(got - float(ev.value)) <= tol
            rows.append((case.name, ev.graph, ev.clustering, got, ev.value, ok, ev.note))
    return rows
