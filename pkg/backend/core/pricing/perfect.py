"""Perfect representation (PER) via a flow feasibility check."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from election.models import Committee, Election, sorted_tuple
from kernels.flow import FlowNetwork, max_flow
from utils.errors import PreconditionError
from utils.logger import get_logger
from .priceability import PriceSystem

logger = get_logger(__name__)


@dataclass(frozen=True)
class PerPartition:
    """k equal voter groups, group i unanimously approving ``assigned[i]``."""
    parts: Tuple[frozenset, ...]
    assigned: Tuple[int, ...]

    def violations(self, election: Election, committee: Committee) -> List[str]:
        problems = []
        n, k = election.num_voters, election.committee_size
        if len(self.parts) != k or len(self.assigned) != k:
            problems.append(f"expected {k} groups, got {len(self.parts)} groups for {len(self.assigned)} winners")
        if len(set(self.assigned)) != len(self.assigned):
            problems.append("assigned winners are not distinct")
        for c in self.assigned:
            if c not in committee.members:
                problems.append(f"assigned candidate {c} is not a winner")

        seen: set = set()
        for part, c in zip(self.parts, self.assigned):
            if k and len(part) * k != n:
                problems.append(f"group of winner {c} has {len(part)} voters, not n/k")
            if seen & part:
                problems.append(f"group of winner {c} overlaps an earlier group")
            seen |= part
            for v in sorted(part):
                if not 0 <= v < n:
                    problems.append(f"voter {v} does not exist")
                elif c not in election.approvals[v]:
                    problems.append(f"voter {v} does not approve its assigned winner {c}")
        if seen != set(range(n)):
            problems.append("groups do not cover every voter")
        return problems

    def to_dict(self) -> Dict[str, Any]:
        return {
            "parts": [list(sorted_tuple(p)) for p in self.parts],
            "assigned": list(self.assigned),
        }


def check_per(election: Election, committee: Committee) -> Tuple[bool, Optional[PerPartition]]:
    """Decide perfect representation and decode the partition from the flow.

    Network: source -> winner (capacity n/k) -> approving voter (1) -> sink (1).
    """
    election.validate_committee(committee)
    n, k = election.num_voters, election.committee_size
    if n % k:
        logger.debug(f"PER impossible: k={k} does not divide n={n}")
        return False, None
    if len(committee) != k:
        logger.debug(f"PER impossible: |W|={len(committee)} differs from k={k}")
        return False, None

    winners = committee.sorted_members()
    source, sink = 0, 1 + k + n
    network = FlowNetwork(num_nodes=n + k + 2, source=source, sink=sink)
    edges = {}
    for i, c in enumerate(winners):
        network.add_arc(source, 1 + i, n // k)
        for v in range(n):
            if c in election.approvals[v]:
                edges[network.add_arc(1 + i, 1 + k + v, 1)] = (i, v)
    for v in range(n):
        network.add_arc(1 + k + v, sink, 1)

    result = max_flow(network)
    if result.value < n:
        logger.debug(f"PER fails: flow covers {result.value} of {n} voters")
        return False, None

    groups: List[set] = [set() for _ in winners]
    for arc, (i, v) in edges.items():
        if result.flows[arc]:
            groups[i].add(v)
    partition = PerPartition(parts=tuple(frozenset(g) for g in groups), assigned=tuple(winners))
    return True, partition


def per_implies_priceable_witness(
    election: Election,
    committee: Committee,
    partition: PerPartition
) -> PriceSystem:
    """Each group spends its whole budget on its winner, at price n/k."""
    problems = partition.violations(election, committee)
    if problems:
        raise PreconditionError(f"invalid PER partition: {problems[0]}")
    payments = {
        (v, c): Fraction(1)
        for part, c in zip(partition.parts, partition.assigned)
        for v in part
    }
    return PriceSystem(
        price=Fraction(election.num_voters, election.committee_size),
        payments=payments,
    )
