from fractions import Fraction

import oracle
from axiograph.counterexamples import check_suite, counterexample_suite, locality_pair


def _oracle(graph, clustering):
    edges = oracle.matrix_edges(graph.adjacency.tolist())
    E = oracle.edge_map([(i, j, Fraction(w).limit_denominator()) for i, j, w in edges])
    return oracle.quality("modularity", E, list(range(graph.n_nodes)),
                          [list(b) for b in clustering.blocks])


def test_suite_shape():
    suite = counterexample_suite()
    assert len(suite) == 4
    assert sum(len(case.expected) for case in suite) == 10


def test_expected_values_listed():
    values = [ev.value for case in counterexample_suite() for ev in case.expected]
    assert values == [Fraction(1, 6), 0, Fraction(23, 50), Fraction(24, 50), Fraction(1, 8), 0,
                      Fraction(20, 121), Fraction(16, 121), Fraction(24, 169),
                      Fraction(28, 169)]


def test_expected_values_are_exact():
    for case in counterexample_suite():
        for ev in case.expected:
            got = _oracle(case.graphs[ev.graph], case.clusterings[ev.clustering])
            assert got == ev.value, (case.name, ev)


def test_check_suite_all_match():
    rows = check_suite()
    assert len(rows) == 10 and all(r[5] for r in rows)


def test_typo_annotation():
    notes = [ev.note for case in counterexample_suite() for ev in case.expected if ev.note]
    assert len(notes) == 1 and "28/121" in notes[0] and "28/169" in notes[0]


def test_locality_pair_keeps_both_graphs():
    case = locality_pair()
    assert set(case.graphs) == {"G1", "G2"}
