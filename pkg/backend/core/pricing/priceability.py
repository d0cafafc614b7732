"""Price systems and the priceability linear program."""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from election.arithmetic import iter_bits
from election.models import Committee, Election
from kernels.simplex import LinearProgram, LPStatus, Sense, simplex_max
from utils.errors import PreconditionError
from utils.logger import get_logger

logger = get_logger(__name__)

PRICE = "p"


@dataclass(frozen=True)
class PriceSystem:
    """A price ``price`` and sparse payments (voter, candidate) -> amount.

    Every voter starts with a budget of 1. Absent pairs pay 0.
    """
    price: Fraction
    payments: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    def paid_by(self, voter: int) -> Fraction:
        return sum((a for (v, _), a in self.payments.items() if v == voter), Fraction(0))

    def collected_for(self, candidate: int) -> Fraction:
        return sum((a for (_, c), a in self.payments.items() if c == candidate), Fraction(0))

    def remaining_budget(self, voter: int) -> Fraction:
        """b_v = 1 - total paid by ``voter``."""
        return 1 - self.paid_by(voter)

    def violations(self, election: Election, committee: Committee) -> List[str]:
        """Every broken support condition, exactly; empty means the system is valid."""
        problems = []
        winners = committee.members
        if self.price <= 0:
            problems.append(f"price {self.price} is not positive")

        for (v, c), amount in sorted(self.payments.items()):
            if not 0 <= v < election.num_voters or not 0 <= c < election.num_candidates:
                problems.append(f"payment ({v}, {c}) references an unknown voter or candidate")
                continue
            if amount < 0 or amount > 1:
                problems.append(f"payment of voter {v} to {c} is {amount}, outside [0, 1]")
            if amount > 0 and (c not in winners or c not in election.approvals[v]):
                problems.append(f"voter {v} pays {amount} to {c}, which is not an approved winner")

        for v in range(election.num_voters):
            if self.paid_by(v) > 1:
                problems.append(f"voter {v} pays {self.paid_by(v)} > 1")

        for c in sorted(winners):
            if self.collected_for(c) != self.price:
                problems.append(f"winner {c} collects {self.collected_for(c)} instead of {self.price}")

        for c in range(election.num_candidates):
            if c in winners:
                continue
            leftover = sum(
                (self.remaining_budget(v) for v in iter_bits(election.supporter_masks[c])),
                Fraction(0),
            )
            if leftover > self.price:
                problems.append(f"supporters of non-winner {c} hold {leftover} > price {self.price}")
        return problems


def _payment_variable(voter: int, candidate: int) -> str:
    return f"y_{voter}_{candidate}"


def build_priceability_lp(election: Election, committee: Committee) -> LinearProgram:
    """Maximize the price over all payment schedules supporting ``committee``.

    Payments to non-winners are forced to zero by the support condition and
    are not variables at all.
    """
    winners = committee.members
    lp = LinearProgram()
    lp.add_variable(PRICE, lower=0)

    per_voter: Dict[int, List[str]] = {}
    per_winner: Dict[int, List[str]] = {c: [] for c in winners}
    for v, ballot in enumerate(election.approvals):
        for c in sorted(ballot & winners):
            name = lp.add_variable(_payment_variable(v, c), lower=0)
            per_voter.setdefault(v, []).append(name)
            per_winner[c].append(name)

    for v, names in per_voter.items():
        lp.add_constraint({name: 1 for name in names}, Sense.LE, 1)

    for c in sorted(winners):
        coeffs = {name: 1 for name in per_winner[c]}
        coeffs[PRICE] = -1
        lp.add_constraint(coeffs, Sense.EQ, 0)

    # Leftover budget of N_c is |N_c| - sum of their payments; it may not exceed p.
    for c in range(election.num_candidates):
        if c in winners or not election.supporter_masks[c]:
            continue
        coeffs: Dict[str, int] = {PRICE: -1}
        for v in iter_bits(election.supporter_masks[c]):
            for name in per_voter.get(v, []):
                coeffs[name] = -1
        support = election.supporter_masks[c].bit_count()
        lp.add_constraint(coeffs, Sense.LE, -support)

    lp.set_objective({PRICE: 1})
    return lp


def check_priceable(election: Election, committee: Committee) -> Tuple[bool, Optional[PriceSystem]]:
    """Decide priceability; on success return a price system at the largest price.

    The committee's own size plays the role of k here, which the LP never
    references anyway.
    """
    if not committee.members:
        raise PreconditionError("priceability needs a nonempty committee")
    for c in committee.members:
        election.check_candidate(c)

    unsupported = [c for c in committee.sorted_members() if not election.supporter_masks[c]]
    if unsupported:
        logger.debug(f"winners {unsupported} have no supporters; not priceable")
        return False, None

    result = simplex_max(build_priceability_lp(election, committee))
    if result.status is not LPStatus.OPTIMAL or result.optimum <= 0:
        logger.debug(f"priceability LP status={result.status.value} optimum={result.optimum}")
        return False, None

    payments = {}
    for v, ballot in enumerate(election.approvals):
        for c in ballot & committee.members:
            amount = result.assignment[_payment_variable(v, c)]
            if amount:
                payments[(v, c)] = amount
    system = PriceSystem(price=result.optimum, payments=payments)
    logger.debug(f"priceable at p={system.price}")
    return True, system
