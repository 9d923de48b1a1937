"""Exact topological complexity computations for right-angled Artin groups,
polyhedral products and real projective spaces."""

__version__ = "0.1.0"

from .cliques import clique_number, maximal_cliques, solve_z, z_r, z_r_oracle
from .graph import Graph, load_graph, make_named, parse_graph
from .tcpoly import IntPolynomial, tc_polynomial, tc_sequence

__all__ = [
    "Graph", "IntPolynomial", "clique_number", "load_graph", "make_named",
    "maximal_cliques", "parse_graph", "solve_z", "tc_polynomial", "tc_sequence",
    "z_r", "z_r_oracle",
]
