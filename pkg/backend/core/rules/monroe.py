"""Monroe's rule: optimal assignments by min-cost flow, exact and greedy committees."""
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Tuple

from election.arithmetic import iter_bits
from election.models import Committee, Election
from kernels.flow import FlowNetwork, min_cost_flow_with_bounds
from utils.errors import PreconditionError
from utils.logger import get_logger
from .pav import check_enumeration_budget

logger = get_logger(__name__)


@dataclass(frozen=True)
class MonroeAssignment:
    """voter -> committee member, plus the number of voters assigned an approved member."""
    assignment: Tuple[int, ...]
    score: int

    def voters_of(self, candidate: int) -> frozenset:
        return frozenset(v for v, c in enumerate(self.assignment) if c == candidate)

    def to_dict(self) -> Dict[str, Any]:
        return {"assignment": list(self.assignment), "score": self.score}


def monroe_score(
    election: Election,
    assignment: MonroeAssignment,
    coalition: Optional[Iterable[int]] = None
) -> int:
    """M_π(S): voters of S assigned a member they approve (S defaults to everybody)."""
    voters = range(election.num_voters) if coalition is None else coalition
    return sum(1 for v in voters if assignment.assignment[v] in election.approvals[v])


def monroe_optimal_assignment(election: Election, committee: Committee) -> MonroeAssignment:
    """Best assignment with every winner getting between floor(n/k) and ceil(n/k) voters.

    Network: source -> voter (1) -> winner (cost -1 if approved) -> sink with
    lower bound floor(n/k) and capacity ceil(n/k); the cheapest flow of value
    n is the negated Monroe score.
    """
    n, k = election.num_voters, election.committee_size
    election.validate_committee(committee)
    if len(committee) != k:
        raise PreconditionError(f"Monroe assignment needs |W| = k = {k}, got {len(committee)}")

    winners = committee.sorted_members()
    floor_share, ceil_share = n // k, -(-n // k)
    source, sink = 0, n + k + 1
    network = FlowNetwork(num_nodes=n + k + 2, source=source, sink=sink)
    arcs: Dict[int, Tuple[int, int]] = {}
    for v in range(n):
        network.add_arc(source, 1 + v, 1)
        for i, c in enumerate(winners):
            cost = -1 if c in election.approvals[v] else 0
            arcs[network.add_arc(1 + v, 1 + n + i, 1, cost=cost)] = (v, c)
    for i in range(k):
        network.add_arc(1 + n + i, sink, ceil_share, lower=floor_share)

    result = min_cost_flow_with_bounds(network, n)
    assignment = [0] * n
    for arc, (v, c) in arcs.items():
        if result.flows[arc]:
            assignment[v] = c
    return MonroeAssignment(assignment=tuple(assignment), score=-result.cost)


def monroe_exact(election: Election) -> Tuple[Committee, MonroeAssignment]:
    """Committee of maximum Monroe score; lexicographically first among ties."""
    check_enumeration_budget(election, "monroe", "greedy-monroe")
    n = election.num_voters
    best: Optional[Tuple[Tuple[int, ...], MonroeAssignment]] = None
    examined = 0
    for members in combinations(range(election.num_candidates), election.committee_size):
        examined += 1
        candidate = monroe_optimal_assignment(election, Committee.of(members))
        if best is None or candidate.score > best[1].score:
            best = (members, candidate)
            if candidate.score == n:
                break
    members, assignment = best
    logger.debug(f"monroe: examined {examined} committees")
    logger.info(f"monroe elected {list(members)} with score {assignment.score}")
    return Committee.of(members, source="monroe"), assignment


def greedy_monroe(election: Election) -> Tuple[Committee, MonroeAssignment]:
    """Greedy Monroe.

    Each round picks the unelected candidate approved by the most unassigned
    voters and hands it ceil(remaining voters / remaining seats) of them:
    approving voters first, then the lowest-index unassigned voters.
    """
    n, k = election.num_voters, election.committee_size
    unassigned = election.all_voters_mask
    assignment: List[Optional[int]] = [None] * n
    chosen: List[int] = []

    for round_no in range(k):
        remaining = unassigned.bit_count()
        share = -(-remaining // (k - round_no))
        best_c, best_support = None, -1
        for c in range(election.num_candidates):
            if c in chosen:
                continue
            support = (election.supporter_masks[c] & unassigned).bit_count()
            if support > best_support:
                best_c, best_support = c, support
        chosen.append(best_c)

        approving = list(iter_bits(election.supporter_masks[best_c] & unassigned))[:share]
        picked = set(approving)
        for v in iter_bits(unassigned):
            if len(picked) >= share:
                break
            picked.add(v)
        for v in picked:
            assignment[v] = best_c
            unassigned &= ~(1 << v)
        logger.debug(
            f"greedy-monroe round {round_no + 1}: candidate {best_c} "
            f"takes {len(picked)} voters ({len(approving)} approving)"
        )

    score = sum(1 for v, c in enumerate(assignment) if c in election.approvals[v])
    result = MonroeAssignment(assignment=tuple(assignment), score=score)
    logger.info(f"greedy-monroe elected {sorted(chosen)} with score {result.score}")
    return Committee.of(chosen, source="greedy-monroe"), result
