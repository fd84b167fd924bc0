"""Exact arithmetic: number fields, polynomials, resultants and factorisation."""

from .algebraic import AlgebraicNumber, algebraic_roots, format_rational
from .bpoly import BPoly, rational_bpoly
from .numberfield import QQ, Embedding, NFElement, NumberField
from .ops import (
    SquarefreeRequired,
    absolute_factor_count,
    bgcd,
    discriminant,
    factor_bivariate,
    factor_rational,
    is_squarefree,
    resultant,
)
from .upoly import UPoly, extend, factor, gcd, rational_poly

__all__ = [
    "AlgebraicNumber",
    "BPoly",
    "Embedding",
    "NFElement",
    "NumberField",
    "QQ",
    "SquarefreeRequired",
    "UPoly",
    "absolute_factor_count",
    "algebraic_roots",
    "bgcd",
    "discriminant",
    "extend",
    "factor",
    "factor_bivariate",
    "factor_rational",
    "format_rational",
    "gcd",
    "is_squarefree",
    "rational_bpoly",
    "rational_poly",
    "resultant",
]
