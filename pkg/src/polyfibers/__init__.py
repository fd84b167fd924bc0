"""Exact fiber topology of polynomial maps C^2 -> C."""

from .invariants import analyze, bifurcation, fiber_report
from .parser import parse_polynomial

__all__ = ["analyze", "bifurcation", "fiber_report", "parse_polynomial"]
__version__ = "0.1.0"
