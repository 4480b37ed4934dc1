"""Polynomial identities and high-precision checks at explicit triangles."""

from __future__ import annotations

from functools import lru_cache

import mpmath

from ..catalog import PSEUDO_CENTERS, Catalog, Sides, default_catalog, eval_center, eval_center_numeric, symbolic_coords
from ..exactnum import quad_sign


@lru_cache(maxsize=None)
def symbolic_sum(cat: Catalog, n):
    """u + v + w as a QuadExt over Q[a, b, c]."""
    u, v, w = symbolic_coords(cat, n)
    return u + v + w


def at_infinity_identity(n, cat: Catalog | None = None) -> bool:
    """True iff the coordinate sum is the zero polynomial in a, b, c (and U)."""
    cat = cat or default_catalog()
    if n in PSEUDO_CENTERS:
        return False
    s = symbolic_sum(cat, n)
    return not s.rat and not s.rad


def at_infinity_at(n, s: Sides, cat: Catalog | None = None) -> bool:
    cat = cat or default_catalog()
    return quad_sign(eval_center(cat, n, s).total) == 0


def at_infinity_check(n, target, cat: Catalog | None = None):
    """Dispatch: Sides -> exact test; 'identity' -> symbolic; family -> isosceles identity."""
    cat = cat or default_catalog()
    if isinstance(target, Sides):
        return at_infinity_at(n, target, cat)
    if target == "identity":
        return at_infinity_identity(n, cat)
    from .iso import at_infinity_iso

    return at_infinity_iso(n, cat)


def numeric_vertex_distance(n, sides, cat: Catalog | None = None, bits: int = 256):
    """Relative size of (v, w) against u at high precision (0 means at vertex A)."""
    cat = cat or default_catalog()
    with mpmath.workprec(bits):
        u, v, w = eval_center_numeric(cat, n, sides, bits)
        return max(abs(v), abs(w)) / abs(u)


def numeric_sum_ratio(n, sides, cat: Catalog | None = None, bits: int = 256):
    """|u + v + w| / max(|u|, |v|, |w|) at high precision."""
    cat = cat or default_catalog()
    with mpmath.workprec(bits):
        coords = eval_center_numeric(cat, n, sides, bits)
        return abs(sum(coords)) / max(abs(x) for x in coords)
