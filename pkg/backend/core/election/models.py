"""Data model for approval elections, committees and violation certificates.

Voters and candidates are dense 0-based indices. Ballots are kept twice:
as frozensets for callers and as int bitsets (bit c set iff c is approved)
for the search loops, together with per-candidate supporter bitsets over
voters. Everything here is immutable after construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple, Union

from utils.errors import InputError


def to_mask(indices: Iterable[int]) -> int:
    """Pack indices into an int bitset."""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def from_mask(mask: int) -> frozenset:
    """Unpack an int bitset into a frozenset of indices."""
    members = []
    i = 0
    while mask:
        if mask & 1:
            members.append(i)
        mask >>= 1
        i += 1
    return frozenset(members)


def sorted_tuple(indices: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(indices))


class Axiom(str, Enum):
    """Every proportionality notion the lab can decide."""
    JR = "jr"
    PJR = "pjr"
    EJR = "ejr"
    FJR = "fjr"
    FPJR = "fpjr"
    CORE = "core"
    EJR_PLUS = "ejr+"
    PJR_PLUS = "pjr+"
    PRICEABLE = "priceable"
    PER = "per"


@dataclass(frozen=True)
class Election:
    """Approval ballots over ``num_candidates`` candidates plus target size k."""
    num_candidates: int
    committee_size: int
    approvals: Tuple[frozenset, ...]
    ballots: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    supporter_masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        approvals = tuple(frozenset(a) for a in self.approvals)
        object.__setattr__(self, "approvals", approvals)

        if len(approvals) < 1:
            raise InputError("an election needs at least one voter")
        if self.num_candidates < 1:
            raise InputError("an election needs at least one candidate")
        if not 1 <= self.committee_size <= self.num_candidates:
            raise InputError(
                f"committee size {self.committee_size} outside [1, {self.num_candidates}]"
            )

        for v, ballot in enumerate(approvals):
            for c in ballot:
                if not isinstance(c, int) or not 0 <= c < self.num_candidates:
                    raise InputError(f"voter {v} approves out-of-range candidate {c!r}")

        ballots = tuple(to_mask(a) for a in approvals)
        supporters = [0] * self.num_candidates
        for v, ballot in enumerate(approvals):
            for c in ballot:
                supporters[c] |= 1 << v
        object.__setattr__(self, "ballots", ballots)
        object.__setattr__(self, "supporter_masks", tuple(supporters))

    @classmethod
    def from_ballots(
        cls,
        ballots: Sequence[Iterable[int]],
        num_candidates: int,
        committee_size: int
    ) -> "Election":
        """Build an election from per-voter approval lists."""
        return cls(
            num_candidates=num_candidates,
            committee_size=committee_size,
            approvals=tuple(frozenset(b) for b in ballots),
        )

    @property
    def num_voters(self) -> int:
        return len(self.approvals)

    @property
    def all_voters_mask(self) -> int:
        return (1 << self.num_voters) - 1

    def check_voter(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.num_voters:
            raise InputError(f"voter index {v!r} outside [0, {self.num_voters})")

    def check_candidate(self, c: int) -> None:
        if not isinstance(c, int) or not 0 <= c < self.num_candidates:
            raise InputError(f"candidate index {c!r} outside [0, {self.num_candidates})")

    def validate_committee(self, committee: "Committee") -> None:
        """Raise InputError unless the committee is well-formed for this election."""
        for c in committee.members:
            self.check_candidate(c)
        if len(committee.members) > self.committee_size:
            raise InputError(
                f"committee has {len(committee.members)} members, "
                f"more than k={self.committee_size}"
            )

    def with_committee_size(self, committee_size: int) -> "Election":
        """Same ballots, different k."""
        return Election(
            num_candidates=self.num_candidates,
            committee_size=committee_size,
            approvals=self.approvals,
        )

    def restrict(
        self,
        voters: Sequence[int],
        candidates: Sequence[int]
    ) -> Tuple["Election", Dict[int, int]]:
        """Keep only the given voters and candidates, renumbering both densely.

        Returns the smaller election and the old -> new candidate index map.
        The committee size is unchanged.
        """
        for v in voters:
            self.check_voter(v)
        for c in candidates:
            self.check_candidate(c)
        kept = sorted(set(candidates))
        remap = {old: new for new, old in enumerate(kept)}
        approvals = tuple(
            frozenset(remap[c] for c in self.approvals[v] if c in remap)
            for v in sorted(set(voters))
        )
        smaller = Election(
            num_candidates=len(kept),
            committee_size=self.committee_size,
            approvals=approvals,
        )
        return smaller, remap


@dataclass(frozen=True)
class Committee:
    """A candidate subset proposed as winners, with its provenance."""
    members: frozenset
    source: str = "external"

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    @classmethod
    def of(cls, members: Iterable[int], source: str = "external") -> "Committee":
        return cls(members=frozenset(members), source=source)

    @property
    def mask(self) -> int:
        return to_mask(self.members)

    def sorted_members(self) -> Tuple[int, ...]:
        return sorted_tuple(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CohesionCertificate:
    """Coalition S, witness set T and level l for weak l-cohesion."""
    coalition: frozenset
    witness: frozenset
    level: int

    def __post_init__(self):
        object.__setattr__(self, "coalition", frozenset(self.coalition))
        object.__setattr__(self, "witness", frozenset(self.witness))
        if not self.coalition:
            raise InputError("certificate coalition must be nonempty")
        if not self.witness:
            raise InputError("certificate witness set must be nonempty")
        if not 1 <= self.level <= len(self.witness):
            raise InputError(
                f"certificate level {self.level} outside [1, {len(self.witness)}]"
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "cohesion",
            "coalition": list(sorted_tuple(self.coalition)),
            "witness": list(sorted_tuple(self.witness)),
            "level": self.level,
        }


@dataclass(frozen=True)
class CoreDeviation:
    """Coalition S and the alternative T every member strictly prefers."""
    coalition: frozenset
    alternative: frozenset

    def __post_init__(self):
        object.__setattr__(self, "coalition", frozenset(self.coalition))
        object.__setattr__(self, "alternative", frozenset(self.alternative))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "core-deviation",
            "coalition": list(sorted_tuple(self.coalition)),
            "alternative": list(sorted_tuple(self.alternative)),
        }


@dataclass(frozen=True)
class DeprivationCertificate:
    """An l-deprived coalition S unanimous on the non-winner ``candidate``."""
    coalition: frozenset
    candidate: int
    level: int

    def __post_init__(self):
        object.__setattr__(self, "coalition", frozenset(self.coalition))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "deprivation",
            "coalition": list(sorted_tuple(self.coalition)),
            "candidate": self.candidate,
            "level": self.level,
        }


Certificate = Union[CohesionCertificate, CoreDeviation, DeprivationCertificate, str]


@dataclass(frozen=True)
class AxiomReport:
    """Verdict for one axiom on one (election, committee) pair.

    A violated report always carries a certificate; ``witness`` holds positive
    evidence where one exists (price system, PER partition).
    """
    axiom: Axiom
    satisfied: bool
    certificate: Optional[Certificate] = None
    witness: Optional[Any] = None
    examined: int = 0

    def __post_init__(self):
        if not self.satisfied and self.certificate is None:
            raise InputError(f"violated {self.axiom.value} report without a certificate")

    @property
    def verdict(self) -> str:
        return "satisfied" if self.satisfied else "violated"
