"""Search guards for the exponential verifiers."""
from dataclasses import dataclass
from typing import Optional

from config import Config
from utils.errors import BudgetExceededError


@dataclass(frozen=True)
class VerifierBudget:
    """Caps on witness-set size and on (T, l, R) triples examined.

    ``None`` means the defaults: witness sets up to min(k, #supported
    candidates), and ``VERIFIER_MAX_SUBSETS`` triples.
    """
    max_witness_size: Optional[int] = None
    max_subsets_examined: Optional[int] = None

    @property
    def subset_limit(self) -> int:
        if self.max_subsets_examined is None:
            return Config.VERIFIER_MAX_SUBSETS
        return self.max_subsets_examined


class SearchCounter:
    """Counts examined triples and aborts once the budget is spent."""

    def __init__(self, budget: VerifierBudget, axiom: str):
        self.limit = budget.subset_limit
        self.axiom = axiom
        self.examined = 0

    def tick(self, amount: int = 1) -> None:
        self.examined += amount
        if self.examined > self.limit:
            raise BudgetExceededError(
                f"{self.axiom}: examined more than {self.limit} subsets without a verdict",
                examined=self.examined,
                limit=self.limit,
            )
