"""Numbers of the form x + y*sqrt(d) over an exact coefficient ring.

The coefficient ring is duck-typed: ``Fraction`` for concrete triangles,
``UniPoly`` for one-parameter families.  All values taking part in one
computation share a single radicand; mixing two different radicands is an
error rather than a silent field tower.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


class RadicandMismatch(ValueError):
    pass


class DomainError(ValueError):
    pass


def _is_zero(x) -> bool:
    return not x


def sign(x) -> int:
    """Sign of a rational (int or Fraction)."""
    return (x > 0) - (x < 0)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class QuadExt:
    """``rat + rad * sqrt(d)``; immutable."""

    __slots__ = ("rat", "rad", "d")

    def __init__(self, rat, rad=0, d=0):
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "rad", rad)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # -- construction helpers -------------------------------------------------

    def _lift(self, other):
        if isinstance(other, QuadExt):
            return other
        return QuadExt(other, 0, self.d)

    def _radicand_with(self, other: QuadExt):
        if _is_zero(other.rad) or _is_zero(self.rad):
            return self.d if not _is_zero(self.rad) else other.d
        if self.d != other.d:
            raise RadicandMismatch(f"radicands differ: {self.d} vs {other.d}")
        return self.d

    @property
    def is_rational(self) -> bool:
        return _is_zero(self.rad) or _is_zero(self.d)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        d = self._radicand_with(o)
        return QuadExt(self.rat + o.rat, self.rad + o.rad, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.rat, -self.rad, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        d = self._radicand_with(o)
        rat = self.rat * o.rat
        if not (_is_zero(self.rad) or _is_zero(o.rad)):
            rat = rat + self.rad * o.rad * d
        rad = self.rat * o.rad + self.rad * o.rat
        return QuadExt(rat, rad, d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = QuadExt(self.rat * 0 + 1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> QuadExt:
        return QuadExt(self.rat, -self.rad, self.d)

    def norm(self):
        """``rat**2 - rad**2 * d``, an element of the coefficient ring."""
        return self.rat * self.rat - self.rad * self.rad * self.d

    def __truediv__(self, other):
        o = self._lift(other)
        if o.is_rational:
            if _is_zero(o.rat):
                raise ZeroDivisionError("division by zero QuadExt")
            return QuadExt(self.rat / o.rat, self.rad / o.rat, self.d)
        n = o.norm()
        if _is_zero(n):
            raise ZeroDivisionError("division by zero QuadExt")
        num = self * o.conjugate()
        return QuadExt(num.rat / n, num.rad / n, num.d)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        try:
            diff = self - other
        except RadicandMismatch:
            return False
        if diff.is_rational:
            return _is_zero(diff.rat)
        if isinstance(diff.rat, (int, Fraction)):
            return quad_sign(diff) == 0
        return _is_zero(diff.rat) and _is_zero(diff.rad)

    def __hash__(self):
        if self.is_rational:
            return hash(self.rat)
        return hash((self.rat, self.rad, self.d))

    def __bool__(self):
        return not (_is_zero(self.rat) and _is_zero(self.rad))

    def __repr__(self):
        return f"QuadExt({self.rat!r}, {self.rad!r}, {self.d!r})"

    def __str__(self):
        if self.is_rational:
            return str(self.rat)
        return f"{self.rat} + ({self.rad})*sqrt({self.d})"

    def __float__(self):
        return float(self.rat) + float(self.rad) * float(self.d) ** 0.5

    def normalized(self) -> QuadExt:
        """Collapse to a rational value when the radicand is a rational square."""
        if self.is_rational:
            return QuadExt(self.rat, 0, self.d)
        root = rational_sqrt(self.d)
        if root is None:
            return self
        return QuadExt(self.rat + self.rad * root, 0, self.d)


def quad_sign(x) -> int:
    """Exact sign of ``rat + rad*sqrt(d)`` with rational parts.

    Decided by comparing ``rat**2`` with ``rad**2 * d``; no floating point.
    """
    if not isinstance(x, QuadExt):
        return sign(x)
    if x.d < 0:
        raise DomainError("negative radicand")
    s_rat = sign(x.rat)
    s_rad = sign(x.rad) if x.d else 0
    if s_rad == 0:
        return s_rat
    if s_rat == 0 or s_rat == s_rad:
        return s_rad
    return s_rat * sign(x.rat * x.rat - x.rad * x.rad * x.d)


def combine_sign(s_rat: int, s_rad: int, s_norm: int) -> int:
    """Sign of ``A + B*sqrt(R)`` from the signs of A, B and ``A^2 - B^2 R``.

    ``R`` is assumed positive.  This is the case table shared by the exact
    scalar path and the polynomial-family path.
    """
    if s_rad == 0:
        return s_rat
    if s_rat == 0 or s_rat == s_rad:
        return s_rad
    return s_rat * s_norm
