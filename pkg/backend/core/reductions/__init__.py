"""Balanced Biclique reductions to committee verification."""
from .graphs import BipartiteGraph, biclique_exists, parse_graph, read_graph
from .compilers import REDUCTIONS, ReductionOutput, reduce_ejr, reduce_pjr

__all__ = [
    "BipartiteGraph",
    "biclique_exists",
    "parse_graph",
    "read_graph",
    "REDUCTIONS",
    "ReductionOutput",
    "reduce_ejr",
    "reduce_pjr",
]
