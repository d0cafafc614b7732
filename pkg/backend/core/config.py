"""Configuration management for Proportionality Lab.

Manages all application settings including:
- Search guards for the exact rules and the axiom verifiers
- LS-PAV swap threshold
- Lab defaults (seed, worker pool, stored counterexamples)
- File paths and logging configuration
"""
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

# Load environment variables from .env file in project root
project_root = Path(__file__).parent.parent.parent
env_path = project_root / '.env'
load_dotenv(dotenv_path=env_path)


def _parse_fraction(raw: str) -> Optional[Fraction]:
    """Parse an optional rational knob such as ``"1/4"``; empty means unset."""
    raw = raw.strip()
    if not raw:
        return None
    return Fraction(raw)


class Config:
    """Application configuration loaded from environment variables and defaults."""

    # Data directories (relative to project root)
    BASE_DIR = Path(__file__).parent  # backend/core
    PROJECT_ROOT = BASE_DIR.parent.parent  # project root
    DATA_DIR = PROJECT_ROOT / os.getenv("DATA_DIR", "data")
    REPORTS_DIR = PROJECT_ROOT / os.getenv("REPORTS_DIR", "data/reports")
    LOGS_DIR = PROJECT_ROOT / "logs"

    # Exact rules refuse when C(m, k) exceeds this many committees
    ENUMERATION_BUDGET = int(os.getenv("ENUMERATION_BUDGET", "10000000"))

    # Verifier guard: (T, l, R) triples examined before giving up
    VERIFIER_MAX_SUBSETS = int(os.getenv("VERIFIER_MAX_SUBSETS", "2000000"))

    # Bland's rule terminates; this only catches malformed tableaus
    SIMPLEX_MAX_PIVOTS = int(os.getenv("SIMPLEX_MAX_PIVOTS", "100000"))

    # LS-PAV improvement threshold; empty means n / k^2
    LS_PAV_DELTA = os.getenv("LS_PAV_DELTA", "")

    # Lab
    LAB_WORKERS = int(os.getenv("LAB_WORKERS", "1"))
    LAB_SEED = int(os.getenv("LAB_SEED", "20240601"))
    LAB_MAX_COUNTEREXAMPLES = int(os.getenv("LAB_MAX_COUNTEREXAMPLES", "3"))

    # Logging
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE = os.getenv("LOG_FILE", "logs/proportionality_lab.log")

    @classmethod
    def ls_pav_delta(cls) -> Optional[Fraction]:
        """Configured LS-PAV threshold, or None for the n / k^2 default."""
        return _parse_fraction(cls.LS_PAV_DELTA)

    @classmethod
    def create_directories(cls):
        """Create necessary directories if they don't exist."""
        cls.DATA_DIR.mkdir(parents=True, exist_ok=True)
        cls.REPORTS_DIR.mkdir(parents=True, exist_ok=True)
        cls.LOGS_DIR.mkdir(parents=True, exist_ok=True)

    @classmethod
    def validate(cls):
        """Validate configuration."""
        errors = []

        if cls.ENUMERATION_BUDGET <= 0:
            errors.append("ENUMERATION_BUDGET must be positive")

        if cls.VERIFIER_MAX_SUBSETS <= 0:
            errors.append("VERIFIER_MAX_SUBSETS must be positive")

        if cls.SIMPLEX_MAX_PIVOTS <= 0:
            errors.append("SIMPLEX_MAX_PIVOTS must be positive")

        if cls.LAB_WORKERS <= 0:
            errors.append("LAB_WORKERS must be positive")

        if cls.LAB_MAX_COUNTEREXAMPLES < 0:
            errors.append("LAB_MAX_COUNTEREXAMPLES must not be negative")

        if not isinstance(logging.getLevelName(cls.LOG_LEVEL.upper()), int):
            errors.append(f"LOG_LEVEL '{cls.LOG_LEVEL}' is not a logging level")

        try:
            delta = cls.ls_pav_delta()
            if delta is not None and delta <= 0:
                errors.append("LS_PAV_DELTA must be positive")
        except (ValueError, ZeroDivisionError):
            errors.append(f"LS_PAV_DELTA '{cls.LS_PAV_DELTA}' is not a rational number")

        if errors:
            raise ValueError(f"Configuration errors: {', '.join(errors)}")

        return True
