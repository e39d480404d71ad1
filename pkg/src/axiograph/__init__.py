"""Axiomatic checks and optimization for graph clustering quality functions."""

from .analysis import classify_outcome, ring_of_cliques, ring_resolution_demo, sweep, two_clique_graph
from .axioms import AXIOMS, AxiomReport, build_richness_witness, check_axiom, verify_witness
from .counterexamples import check_suite, counterexample_suite
from .estimator import QualityClustering, quality_score
from .exceptions import (
    AxiographError,
    InfeasibleError,
    InputError,
    InvariantError,
    ParseError,
    UnsupportedError,
)
from .graph import Clustering, Graph, clique_graph, connected_components
from .io import parse_clustering, parse_graph, read_clustering, read_graph
from .optimize import enumerate_partitions, optimize_exact, optimize_greedy
from .quality import QualitySpec, evaluate, parse_spec

__version__ = "0.1.0"

__all__ = [
    "AXIOMS",
    "AxiographError",
    "AxiomReport",
    "Clustering",
    "Graph",
    "InfeasibleError",
    "InputError",
    "InvariantError",
    "ParseError",
    "QualityClustering",
    "QualitySpec",
    "UnsupportedError",
    "build_richness_witness",
    "check_axiom",
    "check_suite",
    "classify_outcome",
    "clique_graph",
    "connected_components",
    "counterexample_suite",
    "enumerate_partitions",
    "evaluate",
    "optimize_exact",
    "optimize_greedy",
    "parse_clustering",
    "parse_graph",
    "parse_spec",
    "quality_score",
    "read_clustering",
    "read_graph",
    "ring_of_cliques",
    "ring_resolution_demo",
    "sweep",
    "two_clique_graph",
    "verify_witness",
]
