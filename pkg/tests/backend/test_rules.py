"""Committee rules on the worked elections and on random small profiles."""
from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest

from axioms.budget import VerifierBudget
from axioms.registry import verify
from election.models import Axiom, Committee, Election
from pricing.priceability import check_priceable
from rules.monroe import (
    MonroeAssignment,
    greedy_monroe,
    monroe_exact,
    monroe_optimal_assignment,
    monroe_score,
)
from rules.pav import best_swap, ls_pav, pav_exact, pav_score, resolve_delta, seq_pav
from rules.registry import RULES, run_rule
from rules.spending import equal_shares, equal_shares_price_system, run_equal_shares, seq_phragmen
from utils.errors import BudgetExceededError, InputError, PreconditionError

E1_PAV = {0, 1, 2, 6, 7, 8, 9, 10, 11, 12, 13, 14}


def random_election(rng, max_voters=7, max_candidates=7, max_k=None, divisible=False):
    m = int(rng.integers(1, max_candidates + 1))
    k = int(rng.integers(1, min(max_k or m, m) + 1))
    n = int(rng.integers(1, max_voters + 1))
    if divisible:
        n = max(k, n - n % k)
    ballots = [frozenset(int(c) for c in np.flatnonzero(rng.random(m) < 0.5)) for _ in range(n)]
    return Election.from_ballots(ballots, m, k)


def brute_force_pav(election):
    return max(
        pav_score(election, Committee.of(members))
        for members in combinations(range(election.num_candidates), election.committee_size)
    )


def brute_force_monroe(election):
    """Best score over every committee and every capacity-respecting assignment."""
    n, k = election.num_voters, election.committee_size
    low, high = n // k, -(-n // k)
    best = 0
    for members in combinations(range(election.num_candidates), k):
        for choice in product(range(k), repeat=n):
            loads = [choice.count(i) for i in range(k)]
            if all(low <= load <= high for load in loads):
                score = sum(1 for v, i in enumerate(choice) if members[i] in election.approvals[v])
                best = max(best, score)
    return best


class TestPAV:
    def test_score_on_example(self, e1):
        assert pav_score(e1, Committee.of(E1_PAV)) == 11

    def test_score_edge_cases(self, e1):
        assert pav_score(e1, Committee.of(())) == 0
        single = Election.from_ballots([{0, 1}], 2, 2)
        assert pav_score(single, Committee.of({0, 1})) == Fraction(3, 2)

    def test_exact_and_sequential_agree_on_example(self, e1):
        assert pav_exact(e1).members == E1_PAV
        assert seq_pav(e1).members == E1_PAV

    def test_exact_with_k_equal_m(self):
        election = Election.from_ballots([{0}, {1, 2}], 3, 3)
        assert pav_exact(election).members == {0, 1, 2}

    def test_exact_matches_brute_force(self, e2):
        assert pav_score(e2, pav_exact(e2)) == brute_force_pav(e2)

    def test_exact_on_random_elections(self):
        rng = np.random.default_rng(1)
        for _ in range(40):
            election = random_election(rng)
            best = pav_exact(election)
            assert len(best) == election.committee_size
            assert pav_score(election, best) == brute_force_pav(election)

    @pytest.mark.parametrize("axiom", [Axiom.EJR, Axiom.EJR_PLUS, Axiom.PJR_PLUS])
    def test_exact_committees_are_proportional(self, axiom):
        rng = np.random.default_rng(12)
        for _ in range(60):
            election = random_election(rng, max_voters=6, max_candidates=5)
            committee = pav_exact(election)
            report = verify(election, committee, axiom)
            assert report.satisfied, (election.approvals, election.committee_size, report.certificate)

    def test_exact_beats_random_committees(self, e1):
        rng = np.random.default_rng(2)
        best = pav_score(e1, pav_exact(e1))
        for _ in range(1000):
            members = rng.choice(15, size=12, replace=False)
            assert pav_score(e1, Committee.of(int(c) for c in members)) <= best

    def test_exact_refuses_over_budget(self, monkeypatch):
        from config import Config
        monkeypatch.setattr(Config, "ENUMERATION_BUDGET", 5)
        election = Election.from_ballots([{0, 1}, {2}], 6, 3)
        with pytest.raises(BudgetExceededError):
            pav_exact(election)

    def test_sequential_unanimous(self):
        election = Election.from_ballots([{1}, {1}, {0, 1}], 2, 1)
        assert seq_pav(election).members == {1}

    def test_local_search_fixed_point(self, e1):
        committee = ls_pav(e1)
        gain, _ = best_swap(e1, tuple(committee.members))
        assert gain < resolve_delta(e1)
        assert pav_score(e1, committee) >= pav_score(e1, seq_pav(e1))

    def test_local_search_on_random_elections(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            election = random_election(rng)
            committee = ls_pav(election)
            delta = resolve_delta(election)
            assert best_swap(election, tuple(committee.members))[0] < delta
            assert pav_score(election, seq_pav(election)) <= pav_score(election, committee) <= brute_force_pav(election)

    def test_local_search_small_delta_reaches_optimum_on_example(self, e1):
        assert pav_score(e1, ls_pav(e1, delta=Fraction(1, 1000))) == 11

    def test_delta_must_be_positive(self, e1):
        with pytest.raises(InputError):
            ls_pav(e1, delta=Fraction(0))


class TestMonroe:
    def test_assignment_scores_on_example(self, e2):
        assert monroe_optimal_assignment(e2, Committee.of({0, 2, 3})).score == 5
        assert monroe_optimal_assignment(e2, Committee.of({2, 3, 4})).score == 4

    def test_assignment_respects_capacities(self, e2):
        assignment = monroe_optimal_assignment(e2, Committee.of({0, 2, 3}))
        for c in (0, 2, 3):
            assert len(assignment.voters_of(c)) == 2
        assert monroe_score(e2, assignment) == assignment.score

    def test_assignment_needs_k_members(self, e2):
        with pytest.raises(PreconditionError):
            monroe_optimal_assignment(e2, Committee.of({2, 3}))

    def test_unanimous_profile_scores_n(self):
        election = Election.from_ballots([{0, 1}] * 5, 2, 2)
        assert monroe_optimal_assignment(election, Committee.of({0, 1})).score == 5

    def test_exact_on_example(self, e2):
        committee, assignment = monroe_exact(e2)
        assert committee.members == {0, 2, 3}
        assert assignment.score == 5
        assert len(committee.members & {0, 1}) == 1
        assert len(committee.members & {2, 3, 4, 5}) == 2

    def test_exact_scores_n_under_perfect_representation(self):
        election = Election.from_ballots([{0}, {0}, {1, 2}, {1}, {2}, {2}], 3, 3)
        assert monroe_exact(election)[1].score == 6

    def test_exact_matches_double_brute_force(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            election = random_election(rng, max_voters=6, max_candidates=5, max_k=3)
            assert monroe_exact(election)[1].score == brute_force_monroe(election)

    def test_greedy_on_example(self, e2):
        committee, assignment = greedy_monroe(e2)
        assert committee.members == {0, 2, 3}
        assert assignment.score == 5
        assert assignment.assignment[2] == 2

    def test_greedy_single_seat(self):
        election = Election.from_ballots([{0}, {1}, {1}], 2, 1)
        committee, assignment = greedy_monroe(election)
        assert committee.members == {1}
        assert set(assignment.assignment) == {1}

    def test_greedy_equal_shares_when_k_divides_n(self):
        rng = np.random.default_rng(8)
        for _ in range(40):
            election = random_election(rng, divisible=True)
            committee, assignment = greedy_monroe(election)
            share = election.num_voters // election.committee_size
            assert all(len(assignment.voters_of(c)) == share for c in committee.members)

    def test_monroe_lemma_on_exact_outputs(self):
        """Coalitions of n/k voters none of whom got an approved member: their common approvals are all elected."""
        rng = np.random.default_rng(12)
        for _ in range(100):
            election = random_election(rng, max_voters=6, max_candidates=5, max_k=3)
            committee, assignment = monroe_exact(election)
            n, k = election.num_voters, election.committee_size
            for size in range(1, n + 1):
                if size * k < n:
                    continue
                for coalition in combinations(range(n), size):
                    if monroe_score(election, assignment, coalition) != 0:
                        continue
                    common = frozenset.intersection(*(election.approvals[v] for v in coalition))
                    assert common <= committee.members

    def test_assignment_round_trips_to_dict(self):
        assignment = MonroeAssignment(assignment=(1, 1, 0), score=2)
        assert assignment.to_dict() == {"assignment": [1, 1, 0], "score": 2}


class TestSpending:
    def test_equal_shares_on_example(self, e3):
        committee, system = equal_shares_price_system(e3)
        assert len(committee) <= 6
        assert system.violations(e3.with_committee_size(6), committee) == []
        ok, _ = check_priceable(e3.with_committee_size(len(committee)), committee)
        assert ok

    def test_equal_shares_uniform_split(self):
        election = Election.from_ballots([{0}] * 4, 1, 1)
        state = run_equal_shares(election)
        assert state.elected == [0]
        assert all(state.payments[(v, 0)] == 1 for v in range(4))

    def test_equal_shares_spends_n_over_k_per_seat(self, e1):
        state = run_equal_shares(e1)
        assert state.spent == len(state.elected) * Fraction(6, 12)
        assert all(b >= 0 for b in state.budgets)

    def test_equal_shares_and_phragmen_satisfy_fpjr(self, e3):
        for rule in (equal_shares, seq_phragmen):
            committee = rule(e3)
            assert verify(e3.with_committee_size(len(committee)), committee, "fpjr").satisfied

    @pytest.mark.slow
    def test_equal_shares_and_phragmen_satisfy_fpjr_where_pav_fails(self, e1):
        budget = VerifierBudget(max_subsets_examined=50_000_000)
        for rule in (equal_shares, seq_phragmen):
            committee = rule(e1)
            assert verify(e1.with_committee_size(len(committee)), committee, "fpjr", budget).satisfied

    def test_phragmen_party_lists(self):
        ballots = [{0, 1, 2}] * 4 + [{3, 4, 5}] * 2
        committee = seq_phragmen(Election.from_ballots(ballots, 6, 3))
        assert len(committee.members & {0, 1, 2}) == 2
        assert len(committee.members & {3, 4, 5}) == 1

    def test_single_seat_is_approval_winner(self):
        election = Election.from_ballots([{0}, {1}, {1, 2}], 3, 1)
        assert seq_phragmen(election).members == {1}

    def test_equal_shares_single_seat_needs_the_full_price(self):
        # two supporters hold 2 of the price n/k = 3
        short = Election.from_ballots([{0}, {1}, {1, 2}], 3, 1)
        assert equal_shares(short).members == frozenset()
        unanimous = Election.from_ballots([{1}, {1}, {0, 1}], 3, 1)
        assert equal_shares(unanimous).members == {1}

    def test_phragmen_stops_without_supported_candidates(self):
        election = Election.from_ballots([{0}, set()], 3, 2)
        assert seq_phragmen(election).members == {0}

    def test_outputs_priceable_on_random_elections(self):
        rng = np.random.default_rng(10)
        for _ in range(40):
            election = random_election(rng)
            for rule in (equal_shares, seq_phragmen):
                committee = rule(election)
                if not committee.members:
                    continue
                ok, system = check_priceable(election.with_committee_size(len(committee)), committee)
                assert ok, (rule.__name__, election.approvals, committee.members)


class TestRegistry:
    def test_every_rule_runs(self, e2):
        for name in RULES:
            committee = run_rule(name, e2)
            assert len(committee) <= e2.committee_size

    def test_unknown_rule(self, e2):
        with pytest.raises(InputError):
            run_rule("borda", e2)

    def test_rules_are_deterministic(self, e3):
        for name in RULES:
            assert run_rule(name, e3).members == run_rule(name, e3).members
