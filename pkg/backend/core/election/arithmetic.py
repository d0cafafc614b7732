"""Elementary set arithmetic every rule and verifier builds on.

All proportionality thresholds are compared cross-multiplied in integers
(|S|*k >= |T|*n), never as floats.
"""
from typing import Iterable

from utils.errors import PreconditionError
from .models import CohesionCertificate, Election, from_mask, sorted_tuple, to_mask


def candidate_mask(election: Election, candidates: Iterable[int]) -> int:
    """Range-checked candidate bitset."""
    candidates = tuple(candidates)
    for c in candidates:
        election.check_candidate(c)
    return to_mask(candidates)


def voter_mask(election: Election, voters: Iterable[int]) -> int:
    """Range-checked voter bitset."""
    voters = tuple(voters)
    for v in voters:
        election.check_voter(v)
    return to_mask(voters)


def iter_bits(mask: int):
    """Yield the indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def supporters(election: Election, candidate: int) -> frozenset:
    """N_c: the voters approving ``candidate``."""
    election.check_candidate(candidate)
    return from_mask(election.supporter_masks[candidate])


def utility(election: Election, voter: int, candidates: Iterable[int]) -> int:
    """|A_v ∩ s|."""
    election.check_voter(voter)
    return (election.ballots[voter] & candidate_mask(election, candidates)).bit_count()


def union_of_ballots(election: Election, coalition_mask: int) -> int:
    union = 0
    for v in iter_bits(coalition_mask):
        union |= election.ballots[v]
    return union


def collective_utility(election: Election, coalition: Iterable[int], candidates: Iterable[int]) -> int:
    """|s ∩ ⋃_{v∈S} A_v|."""
    union = union_of_ballots(election, voter_mask(election, coalition))
    return (union & candidate_mask(election, candidates)).bit_count()


def check_weak_cohesion(election: Election, certificate: CohesionCertificate) -> bool:
    """True iff S is weakly l-cohesive with witness set T."""
    n, k = election.num_voters, election.committee_size
    coalition = voter_mask(election, certificate.coalition)
    witness = candidate_mask(election, certificate.witness)

    if len(certificate.coalition) * k < len(certificate.witness) * n:
        return False
    return all(
        (election.ballots[v] & witness).bit_count() >= certificate.level
        for v in iter_bits(coalition)
    )


def lemma1_witness(election: Election, certificate: CohesionCertificate) -> int:
    """A candidate c in T approved by at least l*n/k members of S.

    Such a candidate exists for every valid certificate: the members of S
    spend at least l*|S| >= l*|T|*n/k approvals on T, so some c in T
    collects at least the average l*n/k of them.
    """
    if not check_weak_cohesion(election, certificate):
        raise PreconditionError("certificate does not witness weak cohesion")

    n, k = election.num_voters, election.committee_size
    coalition = to_mask(certificate.coalition)
    for c in sorted_tuple(certificate.witness):
        if (election.supporter_masks[c] & coalition).bit_count() * k >= certificate.level * n:
            return c
    raise AssertionError("averaging argument failed; certificate arithmetic is inconsistent")

