"""CLI package for Proportionality Lab."""
from .main import cli

__all__ = ["cli"]
