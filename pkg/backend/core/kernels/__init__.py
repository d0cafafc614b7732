"""Combinatorial and numerical kernels: flows and exact linear programming."""
from .flow import Arc, FlowNetwork, FlowResult, max_flow, min_cost_flow_with_bounds
from .simplex import LinearProgram, LPResult, LPStatus, Sense, simplex_max

__all__ = [
    "Arc",
    "FlowNetwork",
    "FlowResult",
    "max_flow",
    "min_cost_flow_with_bounds",
    "LinearProgram",
    "LPResult",
    "LPStatus",
    "Sense",
    "simplex_max",
]
