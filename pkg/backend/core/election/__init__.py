"""Election model and the elementary set arithmetic on it."""
from .models import (
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
from .arithmetic import (
    check_weak_cohesion,
    collective_utility,
    iter_bits,
    lemma1_witness,
    supporters,
    utility,
)

__all__ = [
    "Axiom",
    "AxiomReport",
    "CohesionCertificate",
    "Committee",
    "CoreDeviation",
    "DeprivationCertificate",
    "Election",
    "from_mask",
    "to_mask",
    "check_weak_cohesion",
    "collective_utility",
    "iter_bits",
    "lemma1_witness",
    "supporters",
    "utility",
]
