import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from axiograph.exceptions import InputError, ParseError, UnsupportedError
from axiograph.graph import Clustering, Graph, scale_graph
from axiograph.optimize import rgs_array
from axiograph.quality import (
    QualitySpec,
    batch_quality,
    cluster_contribution,
    evaluate,
    evaluate_with_info,
    family_scale_param,
    fixed_scale_within_derivative,
    parse_spec,
)

from conftest import graph_and_clustering

SPECS = [
    QualitySpec.modularity(),
    QualitySpec.fixed_scale(3.5),
    QualitySpec.adaptive_scale(2, 2),
    QualitySpec.adaptive_scale(0, 1),
    QualitySpec.adaptive_scale(1, 0),
    QualitySpec.cpm(0.5),
    QualitySpec.rb(1.5),
    QualitySpec.within_sum(),
]


def _oracle_value(spec, g, c):
    E = oracle.edge_map(oracle.matrix_edges(g.adjacency.tolist()))
    return oracle.quality(spec.kind, E, list(range(g.n_nodes)), [list(b) for b in c.blocks],
                          M=spec.M, gamma=spec.gamma, mass=g.node_mass.tolist())


# worked values ------------------------------------------------------------------

def test_locality_values(g1, g2):
    q = QualitySpec.modularity()
    assert evaluate(q, g1, Clustering([[0], [1]])) == pytest.approx(1 / 6, abs=1e-12)
    assert evaluate(q, g1, Clustering([[0, 1]])) == pytest.approx(0, abs=1e-12)
    assert evaluate(q, g2, Clustering([[0], [1], [2]])) == pytest.approx(23 / 50, abs=1e-12)
    assert evaluate(q, g2, Clustering([[0, 1], [2]])) == pytest.approx(24 / 50, abs=1e-12)


def test_monotonicity_values():
    nodes = ["a", "b", "c"]
    g = Graph.from_edges(nodes, [("a", "b", 1), ("c", "c", 2)])
    g_improved = Graph.from_edges(nodes, [("c", "c", 2)])
    c = Clustering.singletons(range(3))
    assert evaluate("modularity", g, c) == pytest.approx(1 / 8, abs=1e-12)
    assert evaluate("modularity", g_improved, c) == pytest.approx(0, abs=1e-12)


def test_relative_monotonicity_values():
    nodes = ["a", "b", "c", "d"]
    g = Graph.from_edges(nodes, [("a", "b", 1), ("c", "c", 8), ("d", "d", 1)])
    g_improved = Graph.from_edges(nodes, [("a", "b", 2), ("c", "c", 8), ("d", "d", 1)])
    c = Clustering([[0, 1, 2], [3]])
    d = Clustering([[0], [1], [2, 3]])
    assert evaluate("modularity", g, c) == pytest.approx(20 / 121, abs=1e-12)
    assert evaluate("modularity", g, d) == pytest.approx(16 / 121, abs=1e-12)
    assert evaluate("modularity", g_improved, c) == pytest.approx(24 / 169, abs=1e-12)
    assert evaluate("modularity", g_improved, d) == pytest.approx(28 / 169, abs=1e-12)


@pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0, 3.0])
def test_adaptive_zero_single_cluster(g2, gamma):
    value = evaluate(QualitySpec.adaptive_scale(0, gamma), g2, Clustering([[0, 1, 2]]))
    assert value == pytest.approx((1 - 1 / gamma) / gamma, abs=1e-12)


def test_cpm_edgeless_singletons():
    g = Graph(np.zeros((5, 5)))
    assert evaluate(QualitySpec.cpm(1), g, Clustering.singletons(range(5))) == -5


def test_coco_values(g2):
    assert evaluate("coco", g2, Clustering([[0, 1], [2]])) == 1
    assert evaluate("coco", g2, Clustering([[0], [1], [2]])) == 0


def test_cluster_contribution(g2):
    assert cluster_contribution("modularity", g2, [2]) == pytest.approx(0.24, abs=1e-12)
    with pytest.raises(UnsupportedError):
        cluster_contribution("coco", g2, [2])
    with pytest.raises(InputError):
        cluster_contribution("modularity", g2, [])


def test_zero_volume_graph_is_flagged():
    g = Graph(np.zeros((3, 3)))
    c = Clustering.singletons(range(3))
    for spec in ("modularity", "rb:1"):
        info = evaluate_with_info(spec, g, c)
        assert info.value == 0 and info.degenerate
    info = evaluate_with_info("adaptive:1,2", g, c)
    assert info.value == 0 and not info.degenerate


def test_clustering_must_cover_graph(g2):
    with pytest.raises(InputError):
        evaluate("modularity", g2, Clustering([[0, 1]]))


# oracle agreement ------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(graph_and_clustering(integer_weights=True), st.sampled_from(SPECS))
def test_matches_exact_oracle(gc, spec):
    g, c = gc
    expected = _oracle_value(spec, g, c)
    assert evaluate(spec, g, c) == pytest.approx(float(expected), rel=1e-12, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(graph_and_clustering(max_nodes=6), st.sampled_from(SPECS + [QualitySpec.coco()]))
def test_batch_matches_scalar(gc, spec):
    g, _ = gc
    rgs = rgs_array(g.n_nodes)
    batch = batch_quality(spec, g, rgs)
    for row, value in zip(rgs[::7], batch[::7]):
        c = Clustering.from_labels(row.tolist())
        assert value == pytest.approx(evaluate(spec, g, c), rel=1e-9, abs=1e-12)


def test_node_mass_enters_cpm():
    g = Graph(np.zeros((2, 2)), node_mass=[2, 3])
    assert evaluate("cpm:1", g, Clustering([[0, 1]])) == -25
    assert evaluate("cpm:1", g, Clustering([[0], [1]])) == -13


# parameters and grammar -------------------------------------------------------------

@pytest.mark.parametrize("text, spec", [
    ("modularity", QualitySpec.modularity()),
    ("fixed:100", QualitySpec.fixed_scale(100)),
    ("adaptive:1,2", QualitySpec.adaptive_scale(1, 2)),
    ("cpm:0.5", QualitySpec.cpm(0.5)),
    ("rb:1", QualitySpec.rb(1)),
    ("ncut", QualitySpec.adaptive_scale(0, 1)),
    ("withinsum", QualitySpec.within_sum()),
    ("coco", QualitySpec.coco()),
])
def test_parse_spec(text, spec):
    assert parse_spec(text) == spec


@pytest.mark.parametrize("spec", SPECS + [QualitySpec.coco()])
def test_spec_string_round_trip(spec):
    assert parse_spec(str(spec)) == spec


@pytest.mark.parametrize("text", [
    "fixed:0", "adaptive:0,0", "rb:0", "cpm", "adaptive:1", "bogus", "fixed:x",
    "modularity:1", "cpm:-1",
])
def test_bad_specs(text):
    with pytest.raises(ParseError):
        parse_spec(text)


def test_direct_construction_checks():
    with pytest.raises(InputError):
        QualitySpec.fixed_scale(0)
    with pytest.raises(InputError):
        QualitySpec("adaptive", M=1)
    with pytest.raises(InputError):
        QualitySpec.adaptive_scale(math.nan, 2)


# scaling ----------------------------------------------------------------------------

def test_family_param_examples(g2):
    assert family_scale_param("adaptive:5,2", 3) == QualitySpec.adaptive_scale(15, 2)
    assert family_scale_param("cpm:2", 3) == QualitySpec.cpm(6)
    assert family_scale_param("fixed:4", 0.5) == QualitySpec.fixed_scale(2)
    for spec in ("modularity", "rb:1", "withinsum", "coco", "adaptive:1,2"):
        assert family_scale_param(spec, 1) == parse_spec(spec)
    c = Clustering([[0, 1], [2]])
    before = evaluate("adaptive:5,2", g2, c)
    after = evaluate(family_scale_param("adaptive:5,2", 3), scale_graph(g2, 3), c)
    assert after == pytest.approx(before, rel=1e-12)
    before = evaluate("cpm:0.5", g2, c)
    after = evaluate(family_scale_param("cpm:0.5", 3), scale_graph(g2, 3), c)
    assert after == pytest.approx(3 * before, rel=1e-12)


def test_family_param_rejects_bad_alpha():
    with pytest.raises(InputError):
        family_scale_param("cpm:1", 0)


# fixed-scale derivative ----------------------------------------------------------------

@pytest.mark.parametrize("v, expected", [(60, -0.002), (50, 0.0), (10, 0.008)])
def test_fixed_derivative(v, expected):
    assert fixed_scale_within_derivative(100, v) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("v", [10.0, 50.0, 60.0])
def test_fixed_derivative_against_finite_difference(v):
    # cluster {0} has a loop and one cross edge; raising the loop by h raises
    # both w_c and v_c by h while the other cluster stays fixed
    spec = QualitySpec.fixed_scale(100)
    loop, b = 4.0, v - 4.0

    def q(x):
        return evaluate(spec, Graph([[x, b], [b, 0.0]]), Clustering([[0], [1]]))

    h = 1e-4
    fd = (q(loop + h) - q(loop - h)) / (2 * h)
    assert fd == pytest.approx(fixed_scale_within_derivative(100, v), abs=1e-6)


def test_fixed_derivative_rejects_bad_m():
    with pytest.raises(InputError):
        fixed_scale_within_derivative(0, 1)
