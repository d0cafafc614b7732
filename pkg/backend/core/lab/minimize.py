"""Greedy shrinking of violating (election, committee) pairs."""
from typing import Optional, Tuple

from axioms.budget import VerifierBudget
from axioms.registry import verify
from election.models import Axiom, Committee, Election
from utils.errors import BudgetExceededError, PreconditionError
from utils.logger import get_logger

logger = get_logger(__name__)


def _violates(
    election: Election,
    committee: Committee,
    axiom: Axiom,
    keep_satisfied: Optional[Axiom],
    budget: Optional[VerifierBudget]
) -> bool:
    try:
        if verify(election, committee, axiom, budget).satisfied:
            return False
        return keep_satisfied is None or verify(election, committee, keep_satisfied, budget).satisfied
    except BudgetExceededError:
        return False


def minimize_counterexample(
    election: Election,
    committee: Committee,
    axiom: Axiom,
    keep_satisfied: Optional[Axiom] = None,
    budget: Optional[VerifierBudget] = None
) -> Tuple[Election, Committee]:
    """Delete voters and non-winning candidates while ``axiom`` stays violated.

    With ``keep_satisfied`` the shrunken pair must also keep satisfying that
    axiom, so an implication counterexample stays one. Deletions never drop
    below one voter or below k candidates; winners are never deleted.
    """
    axiom = Axiom(axiom)
    if not _violates(election, committee, axiom, keep_satisfied, budget):
        raise PreconditionError(f"committee does not witness a {axiom.value} violation to minimize")

    start = (election.num_voters, election.num_candidates)
    changed = True
    while changed:
        changed = False

        for v in range(election.num_voters):
            if election.num_voters == 1:
                break
            voters = [u for u in range(election.num_voters) if u != v]
            smaller, _ = election.restrict(voters, range(election.num_candidates))
            if _violates(smaller, committee, axiom, keep_satisfied, budget):
                election = smaller
                changed = True
                break
        if changed:
            continue

        for c in range(election.num_candidates):
            if c in committee.members or election.num_candidates <= election.committee_size:
                continue
            kept = [d for d in range(election.num_candidates) if d != c]
            smaller, remap = election.restrict(range(election.num_voters), kept)
            shrunk = Committee.of((remap[w] for w in committee.members), source=committee.source)
            if _violates(smaller, shrunk, axiom, keep_satisfied, budget):
                election, committee = smaller, shrunk
                changed = True
                break

    logger.debug(
        f"minimized {axiom.value} counterexample from n={start[0]}, m={start[1]} "
        f"to n={election.num_voters}, m={election.num_candidates}"
    )
    return election, committee
