"""Shared fixtures: import paths and the three worked elections."""
import sys
from pathlib import Path

import pytest

# Add paths (backend + core under project root)
ROOT = Path(__file__).resolve().parents[1]
BACKEND_ROOT = ROOT / "backend"
BACKEND_CORE = BACKEND_ROOT / "core"
for path in (BACKEND_ROOT, BACKEND_CORE):
    if str(path) not in sys.path:
        sys.path.insert(0, str(path))

from election.models import Committee, Election  # noqa: E402

FIXTURES = ROOT / "tests" / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def e1() -> Election:
    """PAV/seq-PAV winners satisfy EJR but violate FPJR."""
    return Election.from_ballots(
        [{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 2, 5}, {6, 7, 8}, {9, 10, 11}, {12, 13, 14}],
        num_candidates=15,
        committee_size=12,
    )


@pytest.fixture
def e1_winners() -> Committee:
    return Committee.of([0, 1, 2, 6, 7, 8, 9, 10, 11, 12, 13, 14])


@pytest.fixture
def e2() -> Election:
    """Monroe-optimal committees are not priceable."""
    return Election.from_ballots(
        [{0}, {1}] + [{2, 3, 4, 5}] * 4,
        num_candidates=6,
        committee_size=3,
    )


@pytest.fixture
def e3() -> Election:
    """{1..6} satisfies FPJR but violates PJR+."""
    return Election.from_ballots(
        [{0, 1}] * 3 + [{0, 2}] * 3 + [{3, 4, 5, 6}] * 6,
        num_candidates=7,
        committee_size=6,
    )


@pytest.fixture
def e3_winners() -> Committee:
    return Committee.of(range(1, 7))
