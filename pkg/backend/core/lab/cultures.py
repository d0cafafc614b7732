"""Seeded random ballot cultures.

Every election is a pure function of (culture, seed, trial index, n, m):
per-trial generators come from ``numpy.random.SeedSequence`` spawned off the
master seed, so trials can run in any order or process.
"""
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from election.models import Election
from utils.errors import InputError


class CultureModel(str, Enum):
    IMPARTIAL = "impartial"
    PARTY_LIST = "party-list"
    URN = "urn"


def derive_seed(master: int, index: int) -> int:
    """Independent 64-bit seed for trial ``index`` of master seed ``master``."""
    state = np.random.SeedSequence(entropy=master, spawn_key=(index,)).generate_state(1, dtype=np.uint64)
    return int(state[0])


def trial_rng(master: int, index: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master, index))


@dataclass(frozen=True)
class BallotCulture:
    """A ballot model plus its parameters and master seed.

    impartial:  every voter approves every candidate independently with probability ``p``.
    party-list: candidates form ``parties`` contiguous blocks; voters are split evenly
                (or by ``sizes``) and approve exactly their party's block.
    urn:        voter i copies a uniformly chosen earlier ballot with probability
                i*mixing / (1 + i*mixing), otherwise draws an impartial ballot.
    """
    model: CultureModel = CultureModel.IMPARTIAL
    seed: int = 0
    p: float = 0.5
    parties: int = 2
    sizes: Optional[Tuple[int, ...]] = None
    mixing: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "model", CultureModel(self.model))
        if not 0 <= self.seed < 2 ** 64:
            raise InputError(f"seed {self.seed} is not a 64-bit unsigned integer")
        if not 0 < self.p < 1:
            raise InputError(f"approval probability p={self.p} outside (0, 1)")
        if self.parties < 1:
            raise InputError("party-list culture needs at least one party")
        if self.sizes is not None and (len(self.sizes) != self.parties or min(self.sizes) < 0):
            raise InputError("party sizes must give one nonnegative size per party")
        if self.mixing < 0:
            raise InputError(f"urn mixing {self.mixing} must be nonnegative")


def _impartial(rng: np.random.Generator, num_candidates: int, p: float) -> frozenset:
    row = rng.random(num_candidates) < p
    return frozenset(int(c) for c in np.flatnonzero(row))


def _party_blocks(total: int, parts: int) -> List[range]:
    """Split ``total`` items into ``parts`` contiguous blocks, larger blocks first."""
    base, extra = divmod(total, parts)
    blocks, start = [], 0
    for i in range(parts):
        size = base + (1 if i < extra else 0)
        blocks.append(range(start, start + size))
        start += size
    return blocks


def draw_ballots(culture: BallotCulture, num_voters: int, num_candidates: int, rng: np.random.Generator) -> List[frozenset]:
    if culture.model == CultureModel.IMPARTIAL:
        return [_impartial(rng, num_candidates, culture.p) for _ in range(num_voters)]

    if culture.model == CultureModel.PARTY_LIST:
        if culture.parties > num_candidates:
            raise InputError(f"{culture.parties} parties need at least as many candidates, got {num_candidates}")
        if culture.sizes is not None:
            if sum(culture.sizes) != num_voters:
                raise InputError(f"party sizes sum to {sum(culture.sizes)}, not n={num_voters}")
            voter_counts = list(culture.sizes)
        else:
            voter_counts = [len(b) for b in _party_blocks(num_voters, culture.parties)]
        candidate_blocks = _party_blocks(num_candidates, culture.parties)
        ballots = []
        for block, count in zip(candidate_blocks, voter_counts):
            ballots += [frozenset(block)] * count
        return ballots

    ballots: List[frozenset] = []
    for i in range(num_voters):
        copy_probability = i * culture.mixing / (1 + i * culture.mixing)
        if i and rng.random() < copy_probability:
            ballots.append(ballots[int(rng.integers(0, i))])
        else:
            ballots.append(_impartial(rng, num_candidates, culture.p))
    return ballots


def generate(
    culture: BallotCulture,
    num_voters: int,
    num_candidates: int,
    committee_size: int,
    index: int = 0
) -> Election:
    """Deterministic pseudo-random election for trial ``index`` of ``culture``."""
    if num_voters < 1 or num_candidates < 1:
        raise InputError("an election needs at least one voter and one candidate")
    if not 1 <= committee_size <= num_candidates:
        raise InputError(f"committee size {committee_size} outside [1, {num_candidates}]")
    rng = trial_rng(culture.seed, index)
    ballots = draw_ballots(culture, num_voters, num_candidates, rng)
    return Election.from_ballots(ballots, num_candidates, committee_size)


@dataclass(frozen=True)
class TrialShape:
    """Election dimensions for a lab run.

    Fixed, or with ``vary`` drawn per trial as n <= num_voters, m <= num_candidates,
    k <= min(committee_size, m). ``divisible`` rounds n down to a multiple of k
    (never below k).
    """
    num_voters: int
    num_candidates: int
    committee_size: int
    vary: bool = False
    divisible: bool = False

    def __post_init__(self):
        if self.num_voters < 1 or self.num_candidates < 1 or self.committee_size < 1:
            raise InputError("trial dimensions must be positive")
        if self.committee_size > self.num_candidates:
            raise InputError(f"committee size {self.committee_size} exceeds {self.num_candidates} candidates")

    def draw(self, rng: np.random.Generator) -> Tuple[int, int, int]:
        n, m, k = self.num_voters, self.num_candidates, self.committee_size
        if self.vary:
            m = int(rng.integers(1, m + 1))
            k = int(rng.integers(1, min(k, m) + 1))
            n = int(rng.integers(1, n + 1))
        if self.divisible:
            n = max(k, n - n % k)
        return n, m, k


def generate_trial(culture: BallotCulture, shape: TrialShape, index: int) -> Election:
    """Draw the dimensions and the ballots of trial ``index`` from one generator."""
    rng = trial_rng(culture.seed, index)
    n, m, k = shape.draw(rng)
    if culture.model == CultureModel.PARTY_LIST:
        # every party needs a candidate; explicit party sizes fix n
        m = max(m, culture.parties)
        if culture.sizes is not None:
            n = sum(culture.sizes)
    return Election.from_ballots(draw_ballots(culture, n, m, rng), m, k)
