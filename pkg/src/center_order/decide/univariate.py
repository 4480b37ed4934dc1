"""Certified sign analysis of A(k) + B(k)·√R(k) over an interval of k."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..exactnum import QuadExt, RootIsolation, UniPoly, combine_sign, isolate_roots, quad_sign, refine_root, sign_at_root


def simplest_between(lo: Fraction, hi: Fraction | None) -> Fraction:
    """Rational with the smallest denominator strictly inside (lo, hi)."""
    if hi is None:
        return Fraction(math.floor(lo) + 1)
    if not lo < hi:
        raise ValueError("empty interval")
    fl = math.floor(lo)
    if fl + 1 < hi:
        return Fraction(fl + 1)
    if fl + 1 == hi and fl == lo:
        return (lo + hi) / 2 if hi - lo > 0 else lo
    # both in [fl, fl + 1]: recurse on reciprocals of the fractional parts
    a, b = lo - fl, hi - fl
    if a == 0:
        # interval (0, b): pick 1/n with 1/n < b
        n = math.floor(1 / b) + 1
        return fl + Fraction(1, n)
    inner = simplest_between(1 / b, 1 / a)
    return fl + 1 / inner


@dataclass
class SignProfile:
    """Signs of a form on the open cells between its candidate zeros.

    ``cells`` holds (left, right, sample, sign) with ``right`` None meaning
    +infinity; ``points`` holds (root, sign) for the cell boundaries.
    """

    lo: Fraction
    hi: Fraction | None
    cells: list = field(default_factory=list)
    points: list = field(default_factory=list)
    identically_zero: bool = False

    def signs(self) -> set[int]:
        return {c[3] for c in self.cells} | {p[1] for p in self.points}

    @property
    def strict_sign(self) -> int | None:
        """+1/-1 if the form has that strict sign on the whole interval."""
        if self.identically_zero:
            return None
        s = self.signs()
        if s == {1}:
            return 1
        if s == {-1}:
            return -1
        return None

    def cell_with_sign(self, sign: int):
        for c in self.cells:
            if c[3] == sign:
                return c
        return None

    def point_with_sign(self, sign: int):
        for p in self.points:
            if p[1] == sign:
                return p
        return None

    def certificate(self) -> dict:
        return {
            "method": "sturm",
            "interval": [str(self.lo), "inf" if self.hi is None else str(self.hi)],
            "cells": len(self.cells),
            "boundary_roots": len(self.points),
        }


def _value_sign(A: UniPoly, B: UniPoly, R: UniPoly, x: Fraction) -> int:
    if not B:
        return A.eval_sign(x)
    return quad_sign(QuadExt(A(x), B(x), R(x)))


def _shrink_inside(r: RootIsolation, lo: Fraction, hi: Fraction | None) -> RootIsolation:
    """Refine until the isolating interval lies strictly inside (lo, hi)."""
    while r.lo <= lo or (hi is not None and r.hi >= hi):
        r = refine_root(r, r.width / 2)
    return r


def form_sign_profile(A: UniPoly, B: UniPoly, R: UniPoly, lo, hi=None) -> SignProfile:
    """Exact sign structure of A + B·√R on (lo, hi); R must be positive there."""
    lo = Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    prof = SignProfile(lo, hi)
    if not A and not B:
        prof.identically_zero = True
        return prof
    N = A if not B else A * A - B * B * R
    if not N:
        raise ArithmeticError("A^2 - B^2 R vanished identically; R is a square")
    roots = isolate_roots(N, lo, hi, width=Fraction(1, 4)) if N.degree > 0 else []
    roots = [_shrink_inside(r, lo, hi) for r in roots]
    lefts = [lo] + [r.hi for r in roots]
    rights = [r.lo for r in roots] + [hi]
    for left, right in zip(lefts, rights):
        if right is not None and left == right:
            x = left
        else:
            x = simplest_between(left, right)
        prof.cells.append((left, right, x, _value_sign(A, B, R, x)))
    for r in roots:
        if not B:
            s = 0
        else:
            sa, sb = sign_at_root(A, r), sign_at_root(B, r)
            s = combine_sign(sa, sb, 0)
        prof.points.append((r, s))
    return prof


def quad_form_parts(x) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Split a QuadExt over Q[k] (or a bare UniPoly) into (A, B, R)."""
    if isinstance(x, QuadExt):
        return x.rat, x.rad, x.d
    return x, UniPoly(), UniPoly()


def root_to_k_text(root: RootIsolation) -> str:
    return f"root of {root.poly.primitive()} in [{float(root.lo):.10g}, {float(root.hi):.10g}]"
