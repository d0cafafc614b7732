"""Priceability and perfect representation."""
from .priceability import PriceSystem, build_priceability_lp, check_priceable
from .perfect import PerPartition, check_per, per_implies_priceable_witness

__all__ = [
    "PriceSystem",
    "build_priceability_lp",
    "check_priceable",
    "PerPartition",
    "check_per",
    "per_implies_priceable_witness",
]
