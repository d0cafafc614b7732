"""Proportional Approval Voting: exact, sequential and local-search variants."""
import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from config import Config
from election.arithmetic import iter_bits
from election.models import Committee, Election, to_mask
from utils.errors import BudgetExceededError, InputError
from utils.logger import get_logger

logger = get_logger(__name__)


@lru_cache(maxsize=None)
def harmonic(t: int) -> Fraction:
    """H(t) = 1 + 1/2 + ... + 1/t, H(0) = 0."""
    if t <= 0:
        return Fraction(0)
    return harmonic(t - 1) + Fraction(1, t)


def _score_of_mask(election: Election, mask: int) -> Fraction:
    return sum((harmonic((b & mask).bit_count()) for b in election.ballots), Fraction(0))


def pav_score(election: Election, committee: Committee) -> Fraction:
    """Sum over voters of H(|A_v ∩ W|), exact."""
    for c in committee.members:
        election.check_candidate(c)
    return _score_of_mask(election, committee.mask)


def check_enumeration_budget(election: Election, rule: str, alternatives: str) -> int:
    """Refuse exhaustive rules when C(m, k) exceeds ENUMERATION_BUDGET."""
    count = math.comb(election.num_candidates, election.committee_size)
    if count > Config.ENUMERATION_BUDGET:
        raise BudgetExceededError(
            f"{rule}: C({election.num_candidates}, {election.committee_size}) = {count} committees "
            f"exceeds ENUMERATION_BUDGET={Config.ENUMERATION_BUDGET}; use {alternatives} instead",
            examined=0,
            limit=Config.ENUMERATION_BUDGET,
        )
    return count


def _marginal_gain(election: Election, utilities: List[int], candidate: int) -> Fraction:
    return sum(
        (Fraction(1, utilities[v] + 1) for v in iter_bits(election.supporter_masks[candidate])),
        Fraction(0),
    )


def pav_exact(election: Election) -> Committee:
    """A size-k committee of maximum PAV score.

    Depth-first branch and bound over committees in lexicographic order of
    their sorted member lists; only strictly better committees replace the
    incumbent, so ties resolve to the lexicographically first maximizer.
    The bound adds the r largest single-candidate gains, which dominates any
    r-candidate extension since H is concave.
    """
    check_enumeration_budget(election, "pav", "seq-pav or ls-pav")
    m, k = election.num_candidates, election.committee_size
    utilities = [0] * election.num_voters
    chosen: List[int] = []
    best: Tuple[Fraction, Optional[Tuple[int, ...]]] = (Fraction(-1), None)
    nodes = 0

    def search(next_candidate: int, score: Fraction) -> None:
        nonlocal best, nodes
        nodes += 1
        remaining = k - len(chosen)
        if remaining == 0:
            if score > best[0]:
                best = (score, tuple(chosen))
            return
        gains = sorted(
            (_marginal_gain(election, utilities, c) for c in range(next_candidate, m)),
            reverse=True,
        )
        if len(gains) < remaining or score + sum(gains[:remaining]) <= best[0]:
            return

        for c in range(next_candidate, m - remaining + 1):
            gain = _marginal_gain(election, utilities, c)
            supporters = list(iter_bits(election.supporter_masks[c]))
            for v in supporters:
                utilities[v] += 1
            chosen.append(c)
            search(c + 1, score + gain)
            chosen.pop()
            for v in supporters:
                utilities[v] -= 1

    search(0, Fraction(0))
    score, members = best
    logger.debug(f"pav: explored {nodes} search nodes")
    logger.info(f"pav elected {list(members)} with score {score}")
    return Committee.of(members, source="pav")


def seq_pav(election: Election) -> Committee:
    """Greedy PAV: k rounds, each adding the largest score increase."""
    utilities = [0] * election.num_voters
    chosen: List[int] = []
    for round_no in range(election.committee_size):
        best_gain, best_c = None, None
        for c in range(election.num_candidates):
            if c in chosen:
                continue
            gain = _marginal_gain(election, utilities, c)
            if best_gain is None or gain > best_gain:
                best_gain, best_c = gain, c
        chosen.append(best_c)
        for v in iter_bits(election.supporter_masks[best_c]):
            utilities[v] += 1
        logger.debug(f"seq-pav round {round_no + 1}: candidate {best_c} gains {best_gain}")
    logger.info(f"seq-pav elected {sorted(chosen)}")
    return Committee.of(chosen, source="seq-pav")


def resolve_delta(election: Election, delta: Optional[Fraction] = None) -> Fraction:
    """Swap threshold: explicit value, else LS_PAV_DELTA, else n / k^2."""
    if delta is None:
        delta = Config.ls_pav_delta()
    if delta is None:
        delta = Fraction(election.num_voters, election.committee_size ** 2)
    delta = Fraction(delta)
    if delta <= 0:
        raise InputError(f"LS-PAV threshold must be positive, got {delta}")
    return delta


def best_swap(election: Election, members: Tuple[int, ...]) -> Tuple[Fraction, Optional[Tuple[int, int]]]:
    """Largest PAV gain of a single (removed, added) swap; ties go to the smallest pair."""
    mask = to_mask(members)
    base = _score_of_mask(election, mask)
    best_gain, best_pair = None, None
    for out in sorted(members):
        without = mask & ~(1 << out)
        for inn in range(election.num_candidates):
            if mask >> inn & 1:
                continue
            gain = _score_of_mask(election, without | (1 << inn)) - base
            if best_gain is None or gain > best_gain:
                best_gain, best_pair = gain, (out, inn)
    return (best_gain if best_gain is not None else Fraction(0)), best_pair


def ls_pav(election: Election, delta: Optional[Fraction] = None) -> Committee:
    """Local search from the seq-PAV committee.

    Applies the best swap while it improves the score by at least ``delta``;
    the result is a fixed point: no swap gains ``delta`` or more.
    """
    delta = resolve_delta(election, delta)
    members = set(seq_pav(election).members)
    swaps = 0
    while True:
        gain, pair = best_swap(election, tuple(members))
        if pair is None or gain < delta:
            break
        out, inn = pair
        members.remove(out)
        members.add(inn)
        swaps += 1
        logger.debug(f"ls-pav swap {swaps}: {out} -> {inn} gains {gain}")
    logger.info(f"ls-pav elected {sorted(members)} after {swaps} swaps (delta={delta})")
    return Committee.of(members, source="ls-pav")
