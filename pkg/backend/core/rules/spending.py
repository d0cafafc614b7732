"""Budget-spending rules: Method of Equal Shares and sequential Phragmén.

Budgets, prices, loads and per-round thresholds are exact rationals, so
ties are real ties and break on the lower candidate index.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from election.arithmetic import iter_bits
from election.models import Committee, Election
from pricing.priceability import PriceSystem
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass
class BudgetState:
    """Remaining voter budgets (start at 1) and the price n/k of one seat."""
    budgets: List[Fraction]
    price: Fraction
    elected: List[int] = field(default_factory=list)
    payments: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    @classmethod
    def initial(cls, election: Election) -> "BudgetState":
        return cls(
            budgets=[Fraction(1)] * election.num_voters,
            price=Fraction(election.num_voters, election.committee_size),
        )

    @property
    def spent(self) -> Fraction:
        return sum(self.payments.values(), Fraction(0))

    def threshold(self, election: Election, candidate: int) -> Optional[Fraction]:
        """Smallest q with sum over N_c of min(b_v, q) >= price; None if unaffordable."""
        budgets = sorted(self.budgets[v] for v in iter_bits(election.supporter_masks[candidate]))
        paid = Fraction(0)
        for i, budget in enumerate(budgets):
            q = (self.price - paid) / (len(budgets) - i)
            if q <= budget:
                return q
            paid += budget
        return None

    def buy(self, election: Election, candidate: int, q: Fraction) -> None:
        for v in iter_bits(election.supporter_masks[candidate]):
            share = min(self.budgets[v], q)
            if share:
                self.budgets[v] -= share
                self.payments[(v, candidate)] = share
        self.elected.append(candidate)


def run_equal_shares(election: Election) -> BudgetState:
    state = BudgetState.initial(election)
    for round_no in range(election.committee_size):
        best: Optional[Tuple[Fraction, int]] = None
        for c in range(election.num_candidates):
            if c in state.elected:
                continue
            q = state.threshold(election, c)
            if q is not None and (best is None or q < best[0]):
                best = (q, c)
        if best is None:
            logger.debug(f"equal-shares: nothing affordable after {round_no} rounds")
            break
        q, c = best
        state.buy(election, c, q)
        logger.debug(f"equal-shares round {round_no + 1}: candidate {c} at q={q}")
    return state


def equal_shares(election: Election) -> Committee:
    """Method of Equal Shares without a completion phase; may elect fewer than k."""
    state = run_equal_shares(election)
    logger.info(f"equal-shares elected {sorted(state.elected)} (spent {state.spent})")
    return Committee.of(state.elected, source="equal-shares")


def equal_shares_price_system(election: Election) -> Tuple[Committee, PriceSystem]:
    """The committee together with the payments the rule itself made."""
    state = run_equal_shares(election)
    system = PriceSystem(price=state.price, payments=dict(state.payments))
    return Committee.of(state.elected, source="equal-shares"), system


@dataclass
class LoadState:
    """Per-voter loads; each elected candidate adds exactly one unit in total."""
    loads: List[Fraction]
    elected: List[int] = field(default_factory=list)

    @property
    def total(self) -> Fraction:
        return sum(self.loads, Fraction(0))


def seq_phragmen(election: Election) -> Committee:
    """Sequential Phragmén, continuous-load formulation.

    Each round elects the candidate minimizing (1 + supporters' load) / |N_c|
    and raises all its supporters to that load. Stops early once no
    unelected candidate has a supporter.
    """
    state = LoadState(loads=[Fraction(0)] * election.num_voters)
    for round_no in range(election.committee_size):
        best: Optional[Tuple[Fraction, int]] = None
        for c in range(election.num_candidates):
            support = election.supporter_masks[c]
            if c in state.elected or not support:
                continue
            load = (1 + sum((state.loads[v] for v in iter_bits(support)), Fraction(0))) / support.bit_count()
            if best is None or load < best[0]:
                best = (load, c)
        if best is None:
            logger.debug(f"seq-phragmen: no supported candidate left after {round_no} rounds")
            break
        load, c = best
        for v in iter_bits(election.supporter_masks[c]):
            state.loads[v] = load
        state.elected.append(c)
        logger.debug(f"seq-phragmen round {round_no + 1}: candidate {c} at load {load}")
    logger.info(f"seq-phragmen elected {sorted(state.elected)} (max load {max(state.loads)})")
    return Committee.of(state.elected, source="seq-phragmen")
