"""Committee rules: PAV family, Monroe family, Equal Shares, sequential Phragmén."""
from .pav import harmonic, ls_pav, pav_exact, pav_score, seq_pav
from .monroe import (
    MonroeAssignment,
    greedy_monroe,
    monroe_exact,
    monroe_optimal_assignment,
    monroe_score,
)
from .spending import (
    BudgetState,
    LoadState,
    equal_shares,
    equal_shares_price_system,
    seq_phragmen,
)
from .registry import RULES, run_rule

__all__ = [
    "harmonic",
    "ls_pav",
    "pav_exact",
    "pav_score",
    "seq_pav",
    "MonroeAssignment",
    "greedy_monroe",
    "monroe_exact",
    "monroe_optimal_assignment",
    "monroe_score",
    "BudgetState",
    "LoadState",
    "equal_shares",
    "equal_shares_price_system",
    "seq_phragmen",
    "RULES",
    "run_rule",
]
