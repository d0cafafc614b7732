"""Enumerate-everything reference verdicts for tiny elections.

Walks every coalition S (and, for the weak-cohesion axioms, every witness
set T) straight from the definitions. For fixed (S, T) the best level is the
smallest per-member count |A_v ∩ T|, so levels need no loop of their own.
Only usable for a handful of voters and candidates.
"""
from itertools import combinations

from election.models import Axiom, Committee, Election
from utils.errors import PreconditionError

ORACLE_MAX_VOTERS = 10
ORACLE_MAX_CANDIDATES = 10


def _subsets(size: int):
    for r in range(1, size + 1):
        yield from combinations(range(size), r)


def oracle_verdict(election: Election, committee: Committee, axiom: Axiom) -> bool:
    """True iff ``committee`` satisfies ``axiom`` by brute force."""
    axiom = Axiom(axiom)
    if axiom in (Axiom.PRICEABLE, Axiom.PER):
        raise PreconditionError(f"no brute-force oracle for {axiom.value}")
    n, m, k = election.num_voters, election.num_candidates, election.committee_size
    if n > ORACLE_MAX_VOTERS or m > ORACLE_MAX_CANDIDATES:
        raise PreconditionError(f"oracle limited to {ORACLE_MAX_VOTERS} voters and {ORACLE_MAX_CANDIDATES} candidates")

    winners = committee.members
    ballots = election.approvals
    utility = [len(b & winners) for b in ballots]

    for coalition in _subsets(n):
        size = len(coalition)
        members = [ballots[v] for v in coalition]
        common = frozenset.intersection(*members)
        joint = len(frozenset().union(*members) & winners)
        worst = max(utility[v] for v in coalition)

        if axiom == Axiom.JR:
            if size * k >= n and common and worst == 0:
                return False
        elif axiom in (Axiom.PJR, Axiom.EJR):
            achieved = joint if axiom == Axiom.PJR else worst
            # some l with achieved < l <= |common| and |S|*k >= l*n
            level = achieved + 1
            if level <= len(common) and size * k >= level * n:
                return False
        elif axiom in (Axiom.EJR_PLUS, Axiom.PJR_PLUS):
            if not common - winners:
                continue
            achieved = worst if axiom == Axiom.EJR_PLUS else joint
            if size * k >= (achieved + 1) * n:
                return False
        else:
            for witness in _subsets(m):
                if size * k < len(witness) * n:
                    break
                counts = [len(b & frozenset(witness)) for b in members]
                if axiom == Axiom.CORE:
                    if all(c > utility[v] for c, v in zip(counts, coalition)):
                        return False
                    continue
                level = min(counts)
                if level == 0:
                    continue
                achieved = joint if axiom == Axiom.FPJR else worst
                if achieved < level:
                    return False
    return True
