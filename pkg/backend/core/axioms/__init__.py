"""Verifiers for the proportionality axioms."""
from .budget import SearchCounter, VerifierBudget
from .verifiers import (
    VERIFIERS,
    verify_core,
    verify_ejr,
    verify_ejr_plus,
    verify_fjr,
    verify_fpjr,
    verify_jr,
    verify_pjr,
    verify_pjr_plus,
)
from .registry import recheck_certificate, verify
from .oracle import oracle_verdict

__all__ = [
    "SearchCounter",
    "VerifierBudget",
    "VERIFIERS",
    "verify_core",
    "verify_ejr",
    "verify_ejr_plus",
    "verify_fjr",
    "verify_fpjr",
    "verify_jr",
    "verify_pjr",
    "verify_pjr_plus",
    "recheck_certificate",
    "verify",
    "oracle_verdict",
]
