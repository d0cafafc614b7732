"""Utilities package for Proportionality Lab.

Contains logging setup and the shared exception hierarchy.
"""
from .logger import get_logger, setup_logging
from .errors import (
    ProportionalityError,
    InputError,
    ElectionFileError,
    PreconditionError,
    BudgetExceededError,
    InfeasibleFlowError,
)

__all__ = [
    "get_logger",
    "setup_logging",
    "ProportionalityError",
    "InputError",
    "ElectionFileError",
    "PreconditionError",
    "BudgetExceededError",
    "InfeasibleFlowError",
]
