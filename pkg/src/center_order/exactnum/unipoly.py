"""Dense univariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class UniPoly:
    """Immutable polynomial; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def x(cls) -> UniPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> UniPoly:
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Sequence) -> UniPoly:
        p = cls((1,))
        for r in roots:
            p = p * cls((-_frac(r), 1))
        return p

    # -- basic properties -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            terms.append(("-" if c < 0 else "+", body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for s, body in terms[1:]:
            out += f" {s} {body}"
        return out

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> UniPoly:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly((other,))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return UniPoly()
        if len(b) == 1:
            return UniPoly([c * b[0] for c in a])
        if len(a) == 1:
            return UniPoly([c * a[0] for c in b])
        # integer convolution is far cheaper than Fraction convolution
        da = lcm(*(c.denominator for c in a))
        db = lcm(*(c.denominator for c in b))
        ia = [int(c * da) for c in a]
        ib = [int(c * db) for c in b]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(ia):
            if x:
                for j, y in enumerate(ib):
                    out[i + j] += x * y
        den = da * db
        return UniPoly([Fraction(v, den) for v in out])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c / other for c in self.coeffs])
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __divmod__(self, other: UniPoly):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = other.coeffs
        dd = len(dv) - 1
        lc = dv[-1]
        if len(rem) - 1 < dd:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = c / lc
            quot[i - dd] = f
            for j in range(dd + 1):
                rem[i - dd + j] -= f * dv[j]
        return UniPoly(quot), UniPoly(rem[:dd])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    # -- calculus and evaluation ---------------------------------------------

    def derivative(self) -> UniPoly:
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_sign(self, x: Fraction) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def sign_at_inf(self) -> int:
        lc = self.lc
        return (lc > 0) - (lc < 0)

    def sign_at_neginf(self) -> int:
        s = self.sign_at_inf()
        return s if self.degree % 2 == 0 else -s

    def compose(self, inner: UniPoly) -> UniPoly:
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    # -- normal forms ---------------------------------------------------------

    def monic(self) -> UniPoly:
        if not self:
            return self
        return self / self.lc

    def primitive(self) -> UniPoly:
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self:
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return UniPoly([Fraction(v // g) for v in ints])

    def positive_primitive(self) -> UniPoly:
        """Like :meth:`primitive` but scaled by a positive factor only."""
        if not self:
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return UniPoly([Fraction(v // g) for v in ints])

    def int_coeffs(self) -> list[int]:
        return [int(c) for c in self.primitive().coeffs]

    def cauchy_bound(self) -> Fraction:
        """Every complex root has modulus strictly below this value."""
        if self.degree < 1:
            return Fraction(1)
        lc = abs(self.lc)
        return 1 + max(abs(c) / lc for c in self.coeffs[:-1])


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) is 0."""
    a, b = p.primitive(), q.primitive()
    while b:
        r = a % b
        a, b = b, r.primitive()
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree < 1:
        return p.monic()
    g = poly_gcd(p, p.derivative())
    return (p // g).monic() if g.degree > 0 else p.monic()
