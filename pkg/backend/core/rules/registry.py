"""Rule names as used on the command line and in the lab."""
from fractions import Fraction
from typing import Callable, Dict, Optional

from election.models import Committee, Election
from utils.errors import InputError
from .monroe import greedy_monroe, monroe_exact
from .pav import ls_pav, pav_exact, seq_pav
from .spending import equal_shares, seq_phragmen


def _monroe(election: Election) -> Committee:
    return monroe_exact(election)[0]


def _greedy_monroe(election: Election) -> Committee:
    return greedy_monroe(election)[0]


RULES: Dict[str, Callable[[Election], Committee]] = {
    "pav": pav_exact,
    "seq-pav": seq_pav,
    "ls-pav": ls_pav,
    "monroe": _monroe,
    "greedy-monroe": _greedy_monroe,
    "equal-shares": equal_shares,
    "seq-phragmen": seq_phragmen,
}


def run_rule(name: str, election: Election, delta: Optional[Fraction] = None) -> Committee:
    """Run the rule registered under ``name``; ``delta`` only applies to ls-pav."""
    if name not in RULES:
        raise InputError(f"unknown rule '{name}' (choose from {', '.join(RULES)})")
    if name == "ls-pav":
        return ls_pav(election, delta=delta)
    return RULES[name](election)
