import numpy as np
import pytest
from hypothesis import given

from axiograph.exceptions import ParseError
from axiograph.graph import Clustering, Graph
from axiograph.io import (
    format_number,
    parse_clustering,
    parse_graph,
    read_graph,
    serialize_clustering,
    serialize_graph,
)

from conftest import graph_and_clustering, graphs


def test_parse_locality_graph(g1):
    assert parse_graph("a b 1\na a 2\nb b 2") == g1


def test_empty_file():
    g = parse_graph("")
    assert g.n_nodes == 0


def test_comments_and_blank_lines(g1):
    assert parse_graph("# header\n\na b 1\n  \na a 2\nb b 2\n") == g1


@pytest.mark.parametrize("text, lineno", [
    ("a b -1", 1),
    ("a b 1\nb c", 2),
    ("a b 1\na b 2", 2),
    ("a b 1\n\nb a 3", 3),
    ("a b x", 1),
    ("a b nan", 1),
    ("a b 1 2", 1),
])
def test_graph_parse_errors(text, lineno):
    with pytest.raises(ParseError) as err:
        parse_graph(text, source="g.txt")
    assert err.value.lineno == lineno
    assert str(err.value).startswith(f"g.txt:{lineno}:")


def test_clustering_parse(g2):
    c = parse_clustering("a x\nb x\nc y\n", g2)
    assert c == Clustering([[0, 1], [2]])


@pytest.mark.parametrize("text, fragment", [
    ("a 0\nb 0\nz 1\n", "unknown node"),
    ("a 0\na 1\nb 0\nc 0\n", "assigned twice"),
    ("a 0\nb 0\n", "without a cluster"),
    ("a 0 1\n", "expected"),
])
def test_clustering_parse_errors(g2, text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_clustering(text, g2)


@given(graphs(min_nodes=0, max_nodes=6))
def test_graph_round_trip(g):
    assert parse_graph(serialize_graph(g)) == g


@given(graph_and_clustering())
def test_clustering_round_trip(gc):
    g, c = gc
    assert parse_clustering(serialize_clustering(c, g), g) == c


def test_round_trip_keeps_isolated_nodes():
    g = Graph(np.zeros((3, 3)), labels=["p", "q", "r"])
    back = parse_graph(serialize_graph(g))
    assert back.labels == ("p", "q", "r") and back.n_nodes == 3


def test_read_graph_reports_path(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("a b 1\na b 2\n")
    with pytest.raises(ParseError, match="bad.txt:2:"):
        read_graph(path)


def test_format_number():
    assert format_number(2.0) == "2"
    assert format_number(0.1) == "0.1"
    assert format_number(1 / 3, 12) == "0.333333333333"
