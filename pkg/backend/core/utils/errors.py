"""Exception hierarchy shared by every package."""
from typing import Optional


class ProportionalityError(Exception):
    """Base class for all errors raised by the lab."""


class InputError(ProportionalityError, ValueError):
    """Malformed input: out-of-range index, bad network, bad parameters."""


class ElectionFileError(InputError):
    """Parse failure in an election or graph file, with its location."""

    def __init__(self, reason: str, line: int, column: int = 1, source: str = "<string>"):
        self.reason = reason
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {reason}")


class PreconditionError(ProportionalityError, ValueError):
    """An operation was called on input outside its documented domain."""


class BudgetExceededError(ProportionalityError, RuntimeError):
    """An exhaustive search hit its configured guard before deciding."""

    def __init__(self, message: str, examined: int = 0, limit: Optional[int] = None):
        self.examined = examined
        self.limit = limit
        super().__init__(message)


class InfeasibleFlowError(ProportionalityError):
    """No flow satisfies the arc bounds at the required value."""
