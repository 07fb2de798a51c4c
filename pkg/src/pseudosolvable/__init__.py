"""Classify candidate prime graphs as pseudo-solvable and build witness groups."""

from .graph import SimpleGraph, complement, parse_graph, format_graph
from .patterns import classify, Certificate, Verdict

__all__ = [
    "SimpleGraph",
    "complement",
    "parse_graph",
    "format_graph",
    "classify",
    "Certificate",
    "Verdict",
]
