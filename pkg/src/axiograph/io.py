"""Edge-list and membership text formats.

Graph files hold one ``<label> <label> <weight>`` line per undirected edge;
``u u w`` is a self loop. Clustering files hold ``<node-label>
<cluster-label>`` lines covering every node exactly once. Blank lines and
lines starting with ``#`` are ignored in both.
"""

import math

import numpy as np

from .exceptions import InputError, ParseError
from .graph import Clustering, Graph

__all__ = [
    "parse_graph",
    "serialize_graph",
    "parse_clustering",
    "serialize_clustering",
    "read_graph",
    "read_clustering",
    "format_number",
]


def format_number(x, digits=None):
    """Shortest round-trip text for ``x``; ``digits`` selects ``%.{digits}g``."""
    x = float(x)
    if digits is not None:
        return format(x, f".{digits}g")
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_graph(text, source=None):
    labels = []
    index = {}
    entries = {}
    for lineno, fields in _content_lines(text):
        if len(fields) != 3:
            raise ParseError(f"expected '<label> <label> <weight>', got {len(fields)} fields",
                             lineno, source)
        u, v, raw = fields
        try:
            w = float(raw)
        except ValueError:
            raise ParseError(f"weight {raw!r} is not a number", lineno, source) from None
        if not math.isfinite(w):
            raise ParseError(f"weight {raw!r} is not finite", lineno, source)
        if w < 0:
            raise ParseError(f"negative weight {raw}", lineno, source)
        for lab in (u, v):
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
        i, j = index[u], index[v]
        key = (min(i, j), max(i, j))
        if key in entries:
            raise ParseError(f"duplicate edge {u} {v} (first on line {entries[key][1]})",
                             lineno, source)
        entries[key] = (w, lineno)
    adj = np.zeros((len(labels), len(labels)))
    for (i, j), (w, _) in entries.items():
        adj[i, j] = adj[j, i] = w
    return Graph(adj, labels=labels)


def serialize_graph(g: Graph) -> str:
    """Every node first as a self-loop line (weight 0 if none), then edges.

    Listing nodes up front keeps isolated nodes and the node order through a
    parse round trip.
    """
    lab = g.labels
    adj = g.adjacency
    lines = [f"{lab[i]} {lab[i]} {format_number(adj[i, i])}" for i in range(g.n_nodes)]
    for i, j, w in g.edges():
        if i != j:
            lines.append(f"{lab[i]} {lab[j]} {format_number(w)}")
    return "".join(line + "\n" for line in lines)


def parse_clustering(text, graph: Graph, source=None) -> Clustering:
    assignment = {}
    for lineno, fields in _content_lines(text):
        if len(fields) != 2:
            raise ParseError(f"expected '<node-label> <cluster-label>', got {len(fields)} fields",
                             lineno, source)
        node, cluster = fields
        try:
            i = graph.index(node)
        except InputError:
            raise ParseError(f"unknown node {node!r}", lineno, source) from None
        if i in assignment:
            raise ParseError(f"node {node!r} assigned twice", lineno, source)
        assignment[i] = cluster
    missing = [graph.labels[i] for i in range(graph.n_nodes) if i not in assignment]
    if missing:
        raise ParseError(f"nodes without a cluster: {' '.join(missing)}", None, source)
    nodes = sorted(assignment)
    return Clustering.from_labels([assignment[i] for i in nodes], nodes)


def serialize_clustering(c: Clustering, graph: Graph) -> str:
    """One ``<node> <cluster>`` line per node; clusters numbered by first node."""
    labels = c.to_labels(graph.n_nodes)
    return "".join(f"{graph.labels[i]} {k}\n" for i, k in enumerate(labels))


def read_graph(path):
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), source=str(path))


def read_clustering(path, graph):
    with open(path, encoding="utf-8") as fh:
        return parse_clustering(fh.read(), graph, source=str(path))
