"""Election instances compiled from Balanced Biclique instances.

``reduce_pjr`` yields an election whose committee violates FPJR (and PJR)
exactly when the graph has an ell x ell biclique; ``reduce_ejr`` yields one
whose committee violates FJR, EJR and core stability under the same
condition. Arbitrary choices (the subset X, the bijection phi) are fixed to
the lowest indices.
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from election.models import Committee, Election
from utils.errors import PreconditionError
from utils.logger import get_logger
from .graphs import BipartiteGraph

logger = get_logger(__name__)


@dataclass(frozen=True)
class ReductionOutput:
    """The compiled election, its designated committee and the group layout.

    ``voter_groups`` / ``candidate_groups`` map labels (V1.., C1..) to the
    index ranges they occupy; ``phi`` maps each voter of the last voter group
    to its private candidate.
    """
    election: Election
    winner: Committee
    voter_groups: Dict[str, Tuple[int, ...]]
    candidate_groups: Dict[str, Tuple[int, ...]]
    phi: Dict[int, int]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "voter_groups": {k: list(v) for k, v in self.voter_groups.items()},
            "candidate_groups": {k: list(v) for k, v in self.candidate_groups.items()},
            "phi": {str(v): c for v, c in sorted(self.phi.items())},
            "winner": list(self.winner.sorted_members()),
        }


def _check_preconditions(graph: BipartiteGraph, ell: int) -> int:
    s = graph.right_size
    if ell < 3:
        raise PreconditionError(f"reduction needs ell >= 3, got {ell}")
    if s < ell:
        raise PreconditionError(f"reduction needs |R| >= ell, got |R|={s} < ell={ell}")
    return s


def _blocks(sizes: List[Tuple[str, int]]) -> Dict[str, Tuple[int, ...]]:
    groups, start = {}, 0
    for label, size in sizes:
        if size < 0:
            raise PreconditionError(f"group {label} would have negative size {size}")
        groups[label] = tuple(range(start, start + size))
        start += size
    return groups


def reduce_pjr(graph: BipartiteGraph, ell: int) -> ReductionOutput:
    """Instance whose committee violates PJR/FPJR iff an ell x ell biclique exists.

    Candidates C1 = L, |C2| = ell-1, |C3| = ell*s + 2*ell - 3s - 2; voters
    V1 = R, |V2| = ell*s, |V3| = |C3|; k = 2(ell-1); n/k = s+1.
    """
    s = _check_preconditions(graph, ell)
    extra = ell * s + 2 * ell - 3 * s - 2
    candidates = _blocks([("C1", graph.left_size), ("C2", ell - 1), ("C3", extra)])
    voters = _blocks([("V1", s), ("V2", ell * s), ("V3", extra)])
    phi = dict(zip(voters["V3"], candidates["C3"]))

    ballots: List[frozenset] = []
    for v in range(s):
        ballots.append(frozenset(candidates["C1"][u] for u in graph.right_neighbors(v)))
    ballots += [frozenset(candidates["C1"] + candidates["C2"])] * len(voters["V2"])
    ballots += [frozenset([phi[v]]) for v in voters["V3"]]

    k = 2 * (ell - 1)
    num_candidates = sum(len(g) for g in candidates.values())
    election = Election.from_ballots(ballots, num_candidates, k)
    assert election.num_voters == k * (s + 1), "voters per seat must be s + 1"

    winner = Committee.of(candidates["C3"][: ell - 1] + candidates["C2"], source="reduce-pjr")
    logger.debug(f"reduce-pjr: n={election.num_voters} m={num_candidates} k={k}")
    return ReductionOutput(election, winner, voters, candidates, phi)


def reduce_ejr(graph: BipartiteGraph, ell: int) -> ReductionOutput:
    """Instance whose committee violates EJR/FJR/core iff an ell x ell biclique exists.

    Candidates C1 = L, |C2| = |C3| = ell-1, |C4| = s*ell - 3s + ell; voters
    V1 = R, |V2| = ell*(s-1), |V3| = |C4|; k = 2(ell-1); n/k = s.
    """
    s = _check_preconditions(graph, ell)
    extra = s * ell - 3 * s + ell
    candidates = _blocks([("C1", graph.left_size), ("C2", ell - 1), ("C3", ell - 1), ("C4", extra)])
    voters = _blocks([("V1", s), ("V2", ell * (s - 1)), ("V3", extra)])
    phi = dict(zip(voters["V3"], candidates["C4"]))

    ballots: List[frozenset] = []
    for v in range(s):
        ballots.append(frozenset(candidates["C1"][u] for u in graph.right_neighbors(v)) | frozenset(candidates["C2"]))
    ballots += [frozenset(candidates["C1"] + candidates["C3"])] * len(voters["V2"])
    ballots += [frozenset([phi[v]]) for v in voters["V3"]]

    k = 2 * (ell - 1)
    num_candidates = sum(len(g) for g in candidates.values())
    election = Election.from_ballots(ballots, num_candidates, k)
    assert election.num_voters == k * s, "voters per seat must be s"

    winner = Committee.of(candidates["C2"] + candidates["C3"], source="reduce-ejr")
    logger.debug(f"reduce-ejr: n={election.num_voters} m={num_candidates} k={k}")
    return ReductionOutput(election, winner, voters, candidates, phi)


REDUCTIONS = {
    "pjr": reduce_pjr,
    "ejr": reduce_ejr,
}
