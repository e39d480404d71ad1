import numpy as np
import pytest
from hypothesis import strategies as st

from axiograph import Clustering, Graph

import acceptance_log


@pytest.fixture
def g1():
    return Graph.from_edges(["a", "b"], [("a", "b", 1), ("a", "a", 2), ("b", "b", 2)])


@pytest.fixture
def g2():
    return Graph.from_edges(
        ["a", "b", "c"], [("a", "b", 1), ("a", "a", 2), ("b", "b", 2), ("c", "c", 4)])


@st.composite
def graphs(draw, min_nodes=1, max_nodes=6, integer_weights=False):
    n = draw(st.integers(min_nodes, max_nodes))
    if integer_weights:
        weight = st.integers(0, 4).map(float)
    else:
        weight = st.one_of(st.just(0.0), st.floats(0.01, 10.0))
    adj = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            adj[i, j] = adj[j, i] = draw(weight)
    return Graph(adj)


@st.composite
def graph_and_clustering(draw, **kw):
    g = draw(graphs(**kw))
    labels = draw(st.lists(st.integers(0, g.n_nodes - 1), min_size=g.n_nodes,
                           max_size=g.n_nodes))
    return g, Clustering.from_labels(labels)


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(acceptance_log.RESULTS):
        terminalreporter.write_line(acceptance_log.RESULTS[key])
