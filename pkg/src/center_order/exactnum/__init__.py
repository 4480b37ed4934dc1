"""Exact arithmetic kernel: rationals, one quadratic extension, polynomials."""

from fractions import Fraction as Rational

from .multipoly import MultiPoly
from .quadext import DomainError, QuadExt, RadicandMismatch, combine_sign, quad_sign, rational_sqrt
from .roots import (
    IntervalSign,
    RootIsolation,
    SturmCounter,
    isolate_roots,
    multiplicity,
    poly_sign_on_interval,
    refine_root,
    sign_at_root,
    sturm_root_count,
    sturm_sequence,
)
from .unipoly import UniPoly, poly_gcd, squarefree_part

__all__ = [
    "Rational",
    "QuadExt",
    "quad_sign",
    "combine_sign",
    "rational_sqrt",
    "DomainError",
    "RadicandMismatch",
    "UniPoly",
    "poly_gcd",
    "squarefree_part",
    "MultiPoly",
    "IntervalSign",
    "RootIsolation",
    "SturmCounter",
    "sturm_sequence",
    "sturm_root_count",
    "poly_sign_on_interval",
    "isolate_roots",
    "refine_root",
    "sign_at_root",
    "multiplicity",
]
