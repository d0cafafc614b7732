"""Exact rational simplex.

Two-phase tableau method over ``fractions.Fraction`` with Bland's rule, so
it terminates without cycling and every reported vertex satisfies the
constraints with zero residual. Intended for the small priceability
programs, not for large LPs.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Dict, List, Mapping, Optional, Union

from config import Config
from utils.errors import BudgetExceededError, InputError
from utils.logger import get_logger

logger = get_logger(__name__)

Number = Union[int, Fraction, str]


def _exact(value: Number, what: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{what}: booleans are not coefficients")
    if isinstance(value, (Rational, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"{what}: cannot read {value!r} as a rational") from e
    raise InputError(f"{what}: {value!r} is not an exact rational (use int, Fraction or 'p/q')")


class Sense(str, Enum):
    LE = "<="
    GE = ">="
    EQ = "=="


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Variable:
    name: str
    lower: Fraction
    upper: Optional[Fraction]


@dataclass(frozen=True)
class Constraint:
    coefficients: Dict[str, Fraction]
    sense: Sense
    rhs: Fraction


@dataclass
class LinearProgram:
    """Maximize ``objective`` over named, bounded variables.

    Every variable needs a finite lower bound (default 0); upper bounds are
    optional.
    """
    variables: List[Variable] = field(default_factory=list)
    constraints: List[Constraint] = field(default_factory=list)
    objective: Dict[str, Fraction] = field(default_factory=dict)

    def add_variable(self, name: str, lower: Number = 0, upper: Optional[Number] = None) -> str:
        if any(v.name == name for v in self.variables):
            raise InputError(f"variable '{name}' declared twice")
        low = _exact(lower, f"lower bound of {name}")
        high = None if upper is None else _exact(upper, f"upper bound of {name}")
        if high is not None and high < low:
            raise InputError(f"variable '{name}' has upper bound below its lower bound")
        self.variables.append(Variable(name=name, lower=low, upper=high))
        return name

    def add_constraint(self, coefficients: Mapping[str, Number], sense: Union[Sense, str], rhs: Number) -> None:
        sense = Sense(sense)
        exact = {name: _exact(a, f"coefficient of {name}") for name, a in coefficients.items()}
        self._check_names(exact)
        self.constraints.append(Constraint(coefficients=exact, sense=sense, rhs=_exact(rhs, "right-hand side")))

    def set_objective(self, coefficients: Mapping[str, Number]) -> None:
        exact = {name: _exact(a, f"objective coefficient of {name}") for name, a in coefficients.items()}
        self._check_names(exact)
        self.objective = exact

    def _check_names(self, coefficients: Mapping[str, Fraction]) -> None:
        known = {v.name for v in self.variables}
        unknown = sorted(set(coefficients) - known)
        if unknown:
            raise InputError(f"undeclared variables: {', '.join(unknown)}")


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    optimum: Optional[Fraction] = None
    assignment: Dict[str, Fraction] = field(default_factory=dict)


class _Tableau:
    """Rows in canonical form w.r.t. ``basis``; the last entry of a row is its rhs."""

    def __init__(self, rows: List[List[Fraction]], basis: List[int], max_pivots: int):
        self.rows = rows
        self.basis = basis
        self.max_pivots = max_pivots
        self.pivots = 0

    @property
    def width(self) -> int:
        return len(self.rows[0]) - 1 if self.rows else 0

    def pivot(self, r: int, j: int) -> None:
        self.pivots += 1
        if self.pivots > self.max_pivots:
            raise BudgetExceededError(
                f"simplex exceeded {self.max_pivots} pivots",
                examined=self.pivots,
                limit=self.max_pivots,
            )
        pivot_row = self.rows[r]
        factor = pivot_row[j]
        pivot_row[:] = [x / factor for x in pivot_row]
        for i, row in enumerate(self.rows):
            if i != r and row[j] != 0:
                scale = row[j]
                row[:] = [x - scale * y for x, y in zip(row, pivot_row)]
        self.basis[r] = j

    def maximize(self, cost: List[Fraction], allowed: int) -> bool:
        """Maximize ``cost``; columns >= ``allowed`` never enter. False if unbounded."""
        while True:
            entering = None
            for j in range(allowed):
                if j in self.basis:
                    continue
                reduced = cost[j] - sum(cost[b] * row[j] for b, row in zip(self.basis, self.rows))
                if reduced > 0:
                    entering = j
                    break
            if entering is None:
                return True

            leaving, best = None, None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leaving]):
                        leaving, best = i, ratio
            if leaving is None:
                return False
            self.pivot(leaving, entering)

    def value_of(self, column: int) -> Fraction:
        for b, row in zip(self.basis, self.rows):
            if b == column:
                return row[-1]
        return Fraction(0)


def simplex_max(lp: LinearProgram, max_pivots: Optional[int] = None) -> LPResult:
    """Solve ``lp`` exactly.

    Returns an LPResult whose status distinguishes optimal, infeasible and
    unbounded programs; ``assignment`` maps every variable name to its value
    at the optimal vertex.
    """
    max_pivots = max_pivots or Config.SIMPLEX_MAX_PIVOTS
    names = [v.name for v in lp.variables]
    column = {name: j for j, name in enumerate(names)}
    num_structural = len(names)

    # Shift x = lower + x' and turn finite upper bounds into rows.
    rows_spec = []
    for con in lp.constraints:
        coeffs = [Fraction(0)] * num_structural
        rhs = con.rhs
        for name, a in con.coefficients.items():
            j = column[name]
            coeffs[j] += a
            rhs -= a * lp.variables[j].lower
        rows_spec.append((coeffs, con.sense, rhs))
    for j, var in enumerate(lp.variables):
        if var.upper is not None:
            coeffs = [Fraction(0)] * num_structural
            coeffs[j] = Fraction(1)
            rows_spec.append((coeffs, Sense.LE, var.upper - var.lower))

    normalized = []
    for coeffs, sense, rhs in rows_spec:
        if rhs < 0:
            coeffs = [-a for a in coeffs]
            rhs = -rhs
            sense = {Sense.LE: Sense.GE, Sense.GE: Sense.LE, Sense.EQ: Sense.EQ}[sense]
        normalized.append((coeffs, sense, rhs))

    num_slack = sum(1 for _, sense, _ in normalized if sense != Sense.EQ)
    num_artificial = sum(1 for _, sense, _ in normalized if sense != Sense.LE)
    first_artificial = num_structural + num_slack
    width = first_artificial + num_artificial

    rows, basis = [], []
    next_slack, next_artificial = num_structural, first_artificial
    for coeffs, sense, rhs in normalized:
        row = coeffs + [Fraction(0)] * (num_slack + num_artificial) + [rhs]
        if sense == Sense.LE:
            row[next_slack] = Fraction(1)
            basis.append(next_slack)
            next_slack += 1
        else:
            if sense == Sense.GE:
                row[next_slack] = Fraction(-1)
                next_slack += 1
            row[next_artificial] = Fraction(1)
            basis.append(next_artificial)
            next_artificial += 1
        rows.append(row)

    tableau = _Tableau(rows, basis, max_pivots)

    if num_artificial:
        phase_one = [Fraction(0)] * first_artificial + [Fraction(-1)] * num_artificial
        tableau.maximize(phase_one, width)
        infeasibility = sum(tableau.value_of(j) for j in range(first_artificial, width))
        if infeasibility > 0:
            logger.debug(f"simplex: infeasible after {tableau.pivots} pivots")
            return LPResult(status=LPStatus.INFEASIBLE)

        # Drive remaining (zero-valued) artificials out; rows that cannot pivot are redundant.
        i = 0
        while i < len(tableau.rows):
            if tableau.basis[i] >= first_artificial:
                row = tableau.rows[i]
                j = next((j for j in range(first_artificial) if row[j] != 0), None)
                if j is None:
                    del tableau.rows[i]
                    del tableau.basis[i]
                    continue
                tableau.pivot(i, j)
            i += 1

    cost = [Fraction(0)] * width
    for name, a in lp.objective.items():
        cost[column[name]] = a
    if not tableau.maximize(cost, first_artificial):
        logger.debug(f"simplex: unbounded after {tableau.pivots} pivots")
        return LPResult(status=LPStatus.UNBOUNDED)

    assignment = {
        var.name: var.lower + tableau.value_of(j)
        for j, var in enumerate(lp.variables)
    }
    optimum = sum((a * assignment[name] for name, a in lp.objective.items()), Fraction(0))
    logger.debug(f"simplex: optimum {optimum} after {tableau.pivots} pivots")
    return LPResult(status=LPStatus.OPTIMAL, optimum=optimum, assignment=assignment)
