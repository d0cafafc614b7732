"""Random elections, the implication matrix and counterexample minimization."""
from .cultures import (
    BallotCulture,
    CultureModel,
    TrialShape,
    derive_seed,
    generate,
    generate_trial,
    trial_rng,
)
from .matrix import (
    PROVEN_IMPLICATIONS,
    Counterexample,
    ImplicationMatrix,
    PairCounts,
    run_matrix,
)
from .minimize import minimize_counterexample

__all__ = [
    "BallotCulture",
    "CultureModel",
    "TrialShape",
    "derive_seed",
    "generate",
    "generate_trial",
    "trial_rng",
    "PROVEN_IMPLICATIONS",
    "Counterexample",
    "ImplicationMatrix",
    "PairCounts",
    "run_matrix",
    "minimize_counterexample",
]
