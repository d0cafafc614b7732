"""Empirical implication matrix between proportionality axioms.

Each trial draws an election, runs every rule on it and decides every axiom
for the winning committee with k := |W|. For each ordered axiom pair (A, B)
the matrix counts (A sat, B sat), (A sat, B violated) and (A violated) and
keeps a few minimized (A sat, B violated) counterexamples. A counterexample
to one of ``PROVEN_IMPLICATIONS`` is a bug in a rule or a verifier.
"""
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from axioms.budget import VerifierBudget
from axioms.registry import verify
from config import Config
from election.models import Axiom, Committee, Election
from rules.registry import RULES, run_rule
from utils.errors import BudgetExceededError, InputError
from utils.logger import get_logger
from .cultures import BallotCulture, TrialShape, generate_trial
from .minimize import minimize_counterexample

logger = get_logger(__name__)

PROVEN_IMPLICATIONS: Tuple[Tuple[Axiom, Axiom], ...] = (
    (Axiom.CORE, Axiom.FJR),
    (Axiom.FJR, Axiom.EJR),
    (Axiom.FJR, Axiom.FPJR),
    (Axiom.EJR, Axiom.PJR),
    (Axiom.FPJR, Axiom.PJR),
    (Axiom.EJR_PLUS, Axiom.EJR),
    (Axiom.EJR_PLUS, Axiom.PJR_PLUS),
    (Axiom.PJR_PLUS, Axiom.PJR),
    (Axiom.PJR, Axiom.JR),
    (Axiom.PRICEABLE, Axiom.FPJR),
    (Axiom.PRICEABLE, Axiom.PJR_PLUS),
    (Axiom.PER, Axiom.PRICEABLE),
)

Pair = Tuple[Axiom, Axiom]


@dataclass(frozen=True)
class Counterexample:
    """An evaluated pair where ``premise`` held and ``conclusion`` failed (k = |W|)."""
    election: Election
    committee: Committee
    rule: str
    premise: Axiom
    conclusion: Axiom
    trial: Optional[int]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "premise": self.premise.value,
            "conclusion": self.conclusion.value,
            "rule": self.rule,
            "trial": self.trial,
            "num_candidates": self.election.num_candidates,
            "committee_size": self.election.committee_size,
            "ballots": [sorted(a) for a in self.election.approvals],
            "committee": list(self.committee.sorted_members()),
        }


@dataclass
class PairCounts:
    sat_sat: int = 0
    sat_viol: int = 0
    viol: int = 0
    counterexamples: List[Counterexample] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.sat_sat + self.sat_viol + self.viol


@dataclass
class ImplicationMatrix:
    """Counts per ordered axiom pair over every conclusive evaluation.

    An evaluation is one (election, committee) pair. Evaluations where some
    verifier ran out of budget go to ``inconclusive`` and empty committees to
    ``skipped``; neither touches the pair counts, so every pair's counts sum
    to ``evaluations``.
    """
    axioms: Tuple[Axiom, ...]
    pairs: Dict[Pair, PairCounts]
    trials: int = 0
    evaluations: int = 0
    inconclusive: int = 0
    skipped: int = 0
    max_counterexamples: int = 3

    @classmethod
    def empty(cls, axioms: Sequence[Axiom], max_counterexamples: Optional[int] = None) -> "ImplicationMatrix":
        axioms = tuple(Axiom(a) for a in axioms)
        if max_counterexamples is None:
            max_counterexamples = Config.LAB_MAX_COUNTEREXAMPLES
        pairs = {(a, b): PairCounts() for a in axioms for b in axioms if a != b}
        return cls(axioms=axioms, pairs=pairs, max_counterexamples=max_counterexamples)

    def wants_counterexample(self, pair: Pair) -> bool:
        return len(self.pairs[pair].counterexamples) < self.max_counterexamples

    def record(self, verdicts: Dict[Axiom, bool], counterexamples: Sequence[Counterexample] = ()) -> None:
        """Count one conclusive evaluation and keep its counterexamples while there is room."""
        self.evaluations += 1
        for (a, b), counts in self.pairs.items():
            if not verdicts[a]:
                counts.viol += 1
            elif verdicts[b]:
                counts.sat_sat += 1
            else:
                counts.sat_viol += 1
        for example in counterexamples:
            pair = (example.premise, example.conclusion)
            if self.wants_counterexample(pair):
                self.pairs[pair].counterexamples.append(example)

    def merge(self, other: "ImplicationMatrix") -> "ImplicationMatrix":
        """Combine two matrices over disjoint trials; ``self`` comes first in trial order."""
        if other.axioms != self.axioms:
            raise InputError("cannot merge matrices over different axiom lists")
        merged = ImplicationMatrix.empty(self.axioms, self.max_counterexamples)
        merged.trials = self.trials + other.trials
        merged.evaluations = self.evaluations + other.evaluations
        merged.inconclusive = self.inconclusive + other.inconclusive
        merged.skipped = self.skipped + other.skipped
        for pair, counts in merged.pairs.items():
            left, right = self.pairs[pair], other.pairs[pair]
            counts.sat_sat = left.sat_sat + right.sat_sat
            counts.sat_viol = left.sat_viol + right.sat_viol
            counts.viol = left.viol + right.viol
            counts.counterexamples = (left.counterexamples + right.counterexamples)[: self.max_counterexamples]
        return merged

    def broken_arrows(self) -> List[Pair]:
        """Proven implications with at least one (premise sat, conclusion violated) observation."""
        return [
            pair for pair in PROVEN_IMPLICATIONS
            if pair in self.pairs and self.pairs[pair].sat_viol > 0
        ]

    def to_document(self) -> Dict[str, Any]:
        proven = set(PROVEN_IMPLICATIONS)
        return {
            "axioms": [a.value for a in self.axioms],
            "trials": self.trials,
            "evaluations": self.evaluations,
            "inconclusive": self.inconclusive,
            "skipped": self.skipped,
            "pairs": [
                {
                    "premise": a.value,
                    "conclusion": b.value,
                    "proven": (a, b) in proven,
                    "sat_sat": counts.sat_sat,
                    "sat_viol": counts.sat_viol,
                    "viol": counts.viol,
                    "counterexamples": [c.to_dict() for c in counts.counterexamples],
                }
                for (a, b), counts in self.pairs.items()
            ],
            "broken_arrows": [[a.value, b.value] for a, b in self.broken_arrows()],
        }


def _evaluate(
    matrix: ImplicationMatrix,
    election: Election,
    committee: Committee,
    rule: str,
    trial: Optional[int],
    budget: Optional[VerifierBudget],
    minimize: bool
) -> None:
    if not committee.members:
        matrix.skipped += 1
        return
    scaled = election.with_committee_size(len(committee))
    verdicts: Dict[Axiom, bool] = {}
    try:
        for axiom in matrix.axioms:
            verdicts[axiom] = verify(scaled, committee, axiom, budget).satisfied
    except BudgetExceededError as e:
        logger.debug(f"trial {trial} rule {rule}: inconclusive ({e})")
        matrix.inconclusive += 1
        return

    found = []
    for a, b in matrix.pairs:
        if not (verdicts[a] and not verdicts[b]) or not matrix.wants_counterexample((a, b)):
            continue
        small, small_committee = scaled, committee
        if minimize:
            small, small_committee = minimize_counterexample(scaled, committee, b, keep_satisfied=a, budget=budget)
        found.append(Counterexample(small, small_committee, rule, a, b, trial))
    matrix.record(verdicts, found)


@dataclass(frozen=True)
class _ChunkJob:
    start: int
    stop: int
    culture: BallotCulture
    shape: TrialShape
    rules: Tuple[str, ...]
    axioms: Tuple[Axiom, ...]
    budget: Optional[VerifierBudget]
    max_counterexamples: int
    minimize: bool


def _run_chunk(job: _ChunkJob) -> ImplicationMatrix:
    """Trials [start, stop); module level so worker processes can unpickle it."""
    matrix = ImplicationMatrix.empty(job.axioms, job.max_counterexamples)
    for trial in range(job.start, job.stop):
        election = generate_trial(job.culture, job.shape, trial)
        matrix.trials += 1
        for rule in job.rules:
            try:
                committee = run_rule(rule, election)
            except BudgetExceededError as e:
                logger.debug(f"trial {trial} rule {rule}: rule over budget ({e})")
                matrix.inconclusive += 1
                continue
            _evaluate(matrix, election, committee, rule, trial, job.budget, job.minimize)
    return matrix


def _chunks(trials: int, workers: int) -> List[Tuple[int, int]]:
    size = max(1, math.ceil(trials / (workers * 4)))
    return [(start, min(start + size, trials)) for start in range(0, trials, size)]


def run_matrix(
    trials: int,
    culture: BallotCulture,
    rules: Sequence[str],
    axioms: Sequence[Axiom],
    shape: TrialShape,
    budget: Optional[VerifierBudget] = None,
    workers: Optional[int] = None,
    fixtures: Sequence[Tuple[Election, Committee]] = (),
    max_counterexamples: Optional[int] = None,
    progress: bool = True,
    minimize: bool = True
) -> ImplicationMatrix:
    """Build the implication matrix over ``trials`` random elections plus ``fixtures``.

    Fixture pairs are evaluated as given (k := |W|) under the rule label
    ``fixture:<committee source>``. Chunks of trials run in order, or on a
    process pool when ``workers`` (default ``LAB_WORKERS``) exceeds one;
    either way they are merged in trial order.
    """
    if trials < 0:
        raise InputError(f"trial count must be nonnegative, got {trials}")
    for rule in rules:
        if rule not in RULES:
            raise InputError(f"unknown rule '{rule}' (choose from {', '.join(RULES)})")
    axioms = tuple(Axiom(a) for a in axioms)
    workers = workers or Config.LAB_WORKERS
    matrix = ImplicationMatrix.empty(axioms, max_counterexamples)

    jobs = [
        _ChunkJob(start, stop, culture, shape, tuple(rules), axioms, budget, matrix.max_counterexamples, minimize)
        for start, stop in _chunks(trials, workers)
    ]
    logger.info(
        f"running {trials} trials ({culture.model.value}, seed {culture.seed}) "
        f"over {len(rules)} rules and {len(axioms)} axioms on {workers} worker(s)"
    )

    with tqdm(total=trials, desc="Trials", unit="trial", disable=not progress) as bar:
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_run_chunk, job) for job in jobs]
                for job, future in zip(jobs, futures):
                    matrix = matrix.merge(future.result())
                    bar.update(job.stop - job.start)
        else:
            for job in jobs:
                matrix = matrix.merge(_run_chunk(job))
                bar.update(job.stop - job.start)

    for election, committee in fixtures:
        election.validate_committee(committee)
        _evaluate(matrix, election, committee, f"fixture:{committee.source}", None, budget, minimize)

    for premise, conclusion in matrix.broken_arrows():
        counts = matrix.pairs[(premise, conclusion)]
        logger.error(
            f"proven implication {premise.value} => {conclusion.value} has "
            f"{counts.sat_viol} counterexample(s)"
        )
    logger.info(
        f"matrix done: {matrix.evaluations} evaluations, {matrix.inconclusive} inconclusive, "
        f"{matrix.skipped} skipped"
    )
    return matrix
