"""Exact verifiers for the justified-representation family and the core.

JR, EJR+ are polynomial scans. The others enumerate witness sets T over
supported candidates (|T| <= k, since |S| <= n) and levels l; for each
(T, l) the largest qualifying coalition is a bitset expression, so voters
are never enumerated. PJR, FPJR and PJR+ additionally enumerate the set
R ⊆ W of winners the coalition may jointly approve, |R| = min(l-1, |W|).

Certificates are minimal: smallest witness set (or level, for the
deprivation axioms), then smallest level, then lexicographically smallest
coalition.
"""
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from election.arithmetic import iter_bits, union_of_ballots
from election.models import (
    Axiom,
    AxiomReport,
    CohesionCertificate,
    Committee,
    CoreDeviation,
    DeprivationCertificate,
    Election,
    from_mask,
    to_mask,
)
from utils.errors import BudgetExceededError
from utils.logger import get_logger
from .budget import SearchCounter, VerifierBudget

logger = get_logger(__name__)


def _bits(mask: int) -> Tuple[int, ...]:
    return tuple(iter_bits(mask))


class _Search:
    """Per-call precomputation shared by the verifiers."""

    def __init__(self, election: Election, committee: Committee, axiom: Axiom, budget: Optional[VerifierBudget]):
        election.validate_committee(committee)
        budget = budget or VerifierBudget()
        self.election = election
        self.axiom = axiom
        self.n = election.num_voters
        self.k = election.committee_size
        self.winners = committee.mask
        self.winner_list = committee.sorted_members()
        self.utilities = [(b & self.winners).bit_count() for b in election.ballots]
        self.relevant = [c for c in range(election.num_candidates) if election.supporter_masks[c]]
        self.counter = SearchCounter(budget, axiom.value)

        full = min(self.k, len(self.relevant))
        cap = budget.max_witness_size
        self.truncated = cap is not None and cap < full
        self.max_witness = cap if self.truncated else full

        self._under: Dict[int, int] = {}
        self._within: Dict[int, List[Tuple[Tuple[int, ...], int]]] = {}

    def large_enough(self, coalition: int, size: int) -> bool:
        """|S| * k >= size * n."""
        return coalition.bit_count() * self.k >= size * self.n

    def under(self, level: int) -> int:
        """Voters with fewer than ``level`` approved winners."""
        if level not in self._under:
            self._under[level] = to_mask(v for v, u in enumerate(self.utilities) if u < level)
        return self._under[level]

    def within(self, size: int) -> List[Tuple[Tuple[int, ...], int]]:
        """Every R ⊆ W of ``size`` with the voters whose approved winners all lie in R."""
        if size not in self._within:
            entries = []
            for chosen in combinations(self.winner_list, size):
                outside = self.winners & ~to_mask(chosen)
                inside = to_mask(v for v, b in enumerate(self.election.ballots) if not b & outside)
                entries.append((chosen, inside))
            self._within[size] = entries
        return self._within[size]

    def level_masks(self, witness: int, size: int) -> List[int]:
        """masks[l] = voters approving at least l members of the witness set."""
        masks = [0] * (size + 1)
        for v, ballot in enumerate(self.election.ballots):
            for level in range(1, min((ballot & witness).bit_count(), size) + 1):
                masks[level] |= 1 << v
        return masks

    def some_member_popular(self, witness: Sequence[int], coalition: int, level: int) -> bool:
        """Some c in T approved by at least l*n/k voters of the coalition."""
        return any(
            (self.election.supporter_masks[c] & coalition).bit_count() * self.k >= level * self.n
            for c in witness
        )

    def violated(self, certificate) -> AxiomReport:
        logger.info(f"{self.axiom.value} violated: {certificate.to_dict()}")
        return AxiomReport(
            axiom=self.axiom,
            satisfied=False,
            certificate=certificate,
            examined=self.counter.examined,
        )

    def satisfied(self) -> AxiomReport:
        if self.truncated:
            raise BudgetExceededError(
                f"{self.axiom.value}: no violation with witness sets up to {self.max_witness}, "
                f"larger ones were not searched",
                examined=self.counter.examined,
                limit=self.max_witness,
            )
        logger.debug(f"{self.axiom.value} satisfied after {self.counter.examined} subsets")
        return AxiomReport(axiom=self.axiom, satisfied=True, examined=self.counter.examined)


def _cohesion(found: List[Tuple[int, int, Tuple[int, ...]]]) -> CohesionCertificate:
    level, coalition, witness = min(found, key=lambda f: (f[0], _bits(f[1]), f[2]))
    return CohesionCertificate(coalition=from_mask(coalition), witness=frozenset(witness), level=level)


def _deprivation(found: List[Tuple[int, int, int]]) -> DeprivationCertificate:
    level, coalition, candidate = min(found, key=lambda f: (f[0], _bits(f[1]), f[2]))
    return DeprivationCertificate(coalition=from_mask(coalition), candidate=candidate, level=level)


def verify_jr(election: Election, committee: Committee, budget: Optional[VerifierBudget] = None) -> AxiomReport:
    """JR: no group of n/k voters sharing a candidate is left with no approved winner."""
    search = _Search(election, committee, Axiom.JR, budget)
    found = []
    for c in search.relevant:
        search.counter.tick()
        coalition = election.supporter_masks[c] & search.under(1)
        if coalition and search.large_enough(coalition, 1):
            found.append((1, coalition, (c,)))
    if found:
        return search.violated(_cohesion(found))
    return AxiomReport(axiom=Axiom.JR, satisfied=True, examined=search.counter.examined)


def verify_pjr(election: Election, committee: Committee, budget: Optional[VerifierBudget] = None) -> AxiomReport:
    """PJR: every l-cohesive group collectively approves at least l winners."""
    search = _Search(election, committee, Axiom.PJR, budget)
    n, k = search.n, search.k
    for level in range(1, search.max_witness + 1):
        popular = [c for c in search.relevant if election.supporter_masks[c].bit_count() * k >= level * n]
        allowed = search.within(min(level - 1, len(search.winner_list)))
        found = []
        for witness in combinations(popular, level):
            search.counter.tick()
            common = search.election.all_voters_mask
            for c in witness:
                common &= election.supporter_masks[c]
            if not search.large_enough(common, level):
                continue
            for _, inside in allowed:
                search.counter.tick()
                coalition = common & inside
                if coalition and search.large_enough(coalition, level):
                    found.append((level, coalition, witness))
        if found:
            return search.violated(_cohesion(found))
    return search.satisfied()


def verify_ejr(election: Election, committee: Committee, budget: Optional[VerifierBudget] = None) -> AxiomReport:
    """EJR: every l-cohesive group has a member with at least l approved winners."""
    search = _Search(election, committee, Axiom.EJR, budget)
    for level in range(1, search.max_witness + 1):
        unhappy = search.under(level)
        popular = [
            c for c in search.relevant
            if search.large_enough(election.supporter_masks[c] & unhappy, level)
        ]
        found = []
        for witness in combinations(popular, level):
            search.counter.tick()
            coalition = unhappy
            for c in witness:
                coalition &= election.supporter_masks[c]
            if coalition and search.large_enough(coalition, level):
                found.append((level, coalition, witness))
        if found:
            return search.violated(_cohesion(found))
    return search.satisfied()


def verify_fpjr(election: Election, committee: Committee, budget: Optional[VerifierBudget] = None) -> AxiomReport:
    """FPJR: every weakly l-cohesive group collectively approves at least l winners.

    Any violating coalition jointly approves at most l-1 winners, so it fits
    inside the coalition generated by some R ⊇ those winners; enumerating R
    is therefore complete.
    """
    search = _Search(election, committee, Axiom.FPJR, budget)
    for size in range(1, search.max_witness + 1):
        found = []
        for witness in combinations(search.relevant, size):
            levels = search.level_masks(to_mask(witness), size)
            for level in range(1, size + 1):
                search.counter.tick()
                reach = levels[level]
                if not search.large_enough(reach, size) or not search.some_member_popular(witness, reach, level):
                    continue
                for _, inside in search.within(min(level - 1, len(search.winner_list))):
                    search.counter.tick()
                    coalition = reach & inside
                    if coalition and search.large_enough(coalition, size):
                        found.append((level, coalition, witness))
        if found:
            return search.violated(_cohesion(found))
    return search.satisfied()


def verify_fjr(election: Election, committee: Committee, budget: Optional[VerifierBudget] = None) -> AxiomReport:
    """FJR: every weakly l-cohesive group has a member with at least l approved winners."""
    search = _Search(election, committee, Axiom.FJR, budget)
    for size in range(1, search.max_witness + 1):
        found = []
        for witness in combinations(search.relevant, size):
            levels = search.level_masks(to_mask(witness), size)
            for level in range(1, size + 1):
                search.counter.tick()
                coalition = levels[level] & search.under(level)
                if coalition and search.large_enough(coalition, size):
                    found.append((level, coalition, witness))
        if found:
            return search.violated(_cohesion(found))
    return search.satisfied()


def verify_core(election: Election, committee: Committee, budget: Optional[VerifierBudget] = None) -> AxiomReport:
    """Core: no group of |T|*n/k voters all strictly prefers some T to the committee."""
    search = _Search(election, committee, Axiom.CORE, budget)
    for size in range(1, search.max_witness + 1):
        found = []
        for witness in combinations(search.relevant, size):
            search.counter.tick()
            alternative = to_mask(witness)
            coalition = to_mask(
                v for v, b in enumerate(election.ballots)
                if (b & alternative).bit_count() > search.utilities[v]
            )
            if coalition and search.large_enough(coalition, size):
                found.append((coalition, witness))
        if found:
            coalition, witness = min(found, key=lambda f: (_bits(f[0]), f[1]))
            used = to_mask(witness) & union_of_ballots(election, coalition)
            return search.violated(CoreDeviation(coalition=from_mask(coalition), alternative=from_mask(used)))
    return search.satisfied()


def verify_ejr_plus(election: Election, committee: Committee, budget: Optional[VerifierBudget] = None) -> AxiomReport:
    """EJR+: no n*l/k voters sharing a non-winner all have fewer than l approved winners."""
    search = _Search(election, committee, Axiom.EJR_PLUS, budget)
    outsiders = [c for c in search.relevant if not search.winners >> c & 1]
    for level in range(1, search.k + 1):
        found = []
        for c in outsiders:
            search.counter.tick()
            coalition = election.supporter_masks[c] & search.under(level)
            if coalition and search.large_enough(coalition, level):
                found.append((level, coalition, c))
        if found:
            return search.violated(_deprivation(found))
    return AxiomReport(axiom=Axiom.EJR_PLUS, satisfied=True, examined=search.counter.examined)


def verify_pjr_plus(election: Election, committee: Committee, budget: Optional[VerifierBudget] = None) -> AxiomReport:
    """PJR+: n*l/k voters sharing a non-winner jointly approve at least l winners."""
    search = _Search(election, committee, Axiom.PJR_PLUS, budget)
    outsiders = [c for c in search.relevant if not search.winners >> c & 1]
    for level in range(1, search.k + 1):
        found = []
        for c in outsiders:
            supporters = election.supporter_masks[c]
            if not search.large_enough(supporters, level):
                continue
            for _, inside in search.within(min(level - 1, len(search.winner_list))):
                search.counter.tick()
                coalition = supporters & inside
                if coalition and search.large_enough(coalition, level):
                    found.append((level, coalition, c))
        if found:
            return search.violated(_deprivation(found))
    return AxiomReport(axiom=Axiom.PJR_PLUS, satisfied=True, examined=search.counter.examined)


VERIFIERS = {
    Axiom.JR: verify_jr,
    Axiom.PJR: verify_pjr,
    Axiom.EJR: verify_ejr,
    Axiom.FPJR: verify_fpjr,
    Axiom.FJR: verify_fjr,
    Axiom.CORE: verify_core,
    Axiom.EJR_PLUS: verify_ejr_plus,
    Axiom.PJR_PLUS: verify_pjr_plus,
}
