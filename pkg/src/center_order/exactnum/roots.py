"""Sturm sequences, certified sign decisions and real-root isolation."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .quadext import DomainError
from .unipoly import UniPoly, poly_gcd, squarefree_part


class IntervalSign(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    ZERO = "Zero"
    MIXED = "Mixed"


@dataclass(frozen=True)
class RootIsolation:
    """A real algebraic number: the unique root of ``poly`` in ``[lo, hi]``."""

    poly: UniPoly
    lo: Fraction
    hi: Fraction
    multiplicity_hint: int = 1

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self):
        return float(self.mid)

    def refine(self, width) -> RootIsolation:
        return refine_root(self, Fraction(width))

    def to_dict(self) -> dict:
        return {
            "polynomial": self.poly.int_coeffs(),
            "polynomial_text": str(self.poly.primitive()),
            "interval": [str(self.lo), str(self.hi)],
            "approx": float(self.mid),
            "multiplicity_hint": self.multiplicity_hint,
        }


def _resolve_hi(p: UniPoly, hi):
    if hi is None or hi == float("inf"):
        return p.cauchy_bound()
    return Fraction(hi)


def _resolve_lo(p: UniPoly, lo):
    if lo is None or lo == float("-inf"):
        return -p.cauchy_bound()
    return Fraction(lo)


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Sturm chain of ``p`` with each member rescaled by a positive constant."""
    seq = [p.positive_primitive(), p.derivative().positive_primitive()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append((-r).positive_primitive())
    return seq


def _variations(seq: list[UniPoly], x: Fraction) -> int:
    count = 0
    last = 0
    for q in seq:
        s = q.eval_sign(x)
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


class SturmCounter:
    """Reusable root counter for one square-free polynomial."""

    def __init__(self, p: UniPoly):
        if not p:
            raise DomainError("zero polynomial has no Sturm sequence")
        self.poly = squarefree_part(p)
        self.seq = sturm_sequence(self.poly) if self.poly.degree > 0 else [self.poly]

    def count(self, lo: Fraction, hi: Fraction) -> int:
        """Distinct roots in the open interval ``(lo, hi)``."""
        if self.poly.degree < 1 or lo >= hi:
            return 0
        n = _variations(self.seq, lo) - _variations(self.seq, hi)
        if self.poly.eval_sign(hi) == 0:
            n -= 1
        return n


def sturm_root_count(p: UniPoly, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the open interval (lo, hi)."""
    if not p:
        raise DomainError("zero polynomial")
    lo, hi = _resolve_lo(p, lo), _resolve_hi(p, hi)
    if lo >= hi:
        raise ValueError("empty interval")
    return SturmCounter(p).count(lo, hi)


def poly_sign_on_interval(p: UniPoly, lo, hi) -> IntervalSign:
    """Strict sign of ``p`` on the open interval, or MIXED/ZERO."""
    if not p:
        return IntervalSign.ZERO
    lo, hi = _resolve_lo(p, lo), _resolve_hi(p, hi)
    if lo >= hi:
        raise ValueError("empty interval")
    if p.degree > 0 and SturmCounter(p).count(lo, hi) > 0:
        return IntervalSign.MIXED
    s = p.eval_sign((lo + hi) / 2)
    return IntervalSign.POSITIVE if s > 0 else IntervalSign.NEGATIVE


def _split_point(p: UniPoly, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    step = (hi - lo) / 64
    k = 1
    while p.eval_sign(mid) == 0:
        mid = (lo + hi) / 2 + (k if k % 2 else -k) * step / (k + 1)
        k += 1
    return mid


def _nudge_endpoints(sq: UniPoly, counter: SturmCounter, lo: Fraction, hi: Fraction):
    """Move root endpoints inward without losing interior roots."""
    n = counter.count(lo, hi)
    if sq.eval_sign(lo) == 0:
        step = (hi - lo) / 2
        while sq.eval_sign(lo + step) == 0 or counter.count(lo + step, hi) != n:
            step /= 2
        lo = lo + step
    if sq.eval_sign(hi) == 0:
        step = (hi - lo) / 2
        while sq.eval_sign(hi - step) == 0 or counter.count(lo, hi - step) != n:
            step /= 2
        hi = hi - step
    return lo, hi


def isolate_roots(p: UniPoly, lo, hi, width=Fraction(1, 10**6)) -> list[RootIsolation]:
    """Pairwise disjoint isolating intervals for the distinct roots in (lo, hi).

    Each closed interval contains exactly one root of the square-free part and
    has width at most ``width``; endpoints are never roots.
    """
    if not p:
        raise DomainError("zero polynomial")
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    lo, hi = _resolve_lo(p, lo), _resolve_hi(p, hi)
    counter = SturmCounter(p)
    sq = counter.poly
    if sq.degree < 1:
        return []
    lo, hi = _nudge_endpoints(sq, counter, lo, hi)
    out: list[RootIsolation] = []
    stack = [(lo, hi, counter.count(lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        endpoints_ok = sq.eval_sign(a) != 0 and sq.eval_sign(b) != 0
        if n == 1 and b - a <= width and endpoints_ok:
            out.append(RootIsolation(sq, a, b))
            continue
        m = _split_point(sq, a, b)
        n_left = counter.count(a, m)
        stack.append((m, b, n - n_left))
        stack.append((a, m, n_left))
    out.sort(key=lambda r: r.lo)
    return out


def refine_root(root: RootIsolation, width: Fraction) -> RootIsolation:
    """Bisect an isolating interval (sign-change based) down to ``width``."""
    p = root.poly
    a, b = root.lo, root.hi
    sa = p.eval_sign(a)
    if sa == 0 or p.eval_sign(b) == 0:
        raise ValueError("isolating interval endpoints must not be roots")
    while b - a > width:
        m = (a + b) / 2
        sm = p.eval_sign(m)
        if sm == 0:
            return RootIsolation(p, m, m, root.multiplicity_hint)
        if sm == sa:
            a = m
        else:
            b = m
    return RootIsolation(p, a, b, root.multiplicity_hint)


def sign_at_root(q: UniPoly, root: RootIsolation) -> int:
    """Exact sign of ``q`` at the algebraic number described by ``root``."""
    if not q:
        return 0
    if root.lo == root.hi:
        return q.eval_sign(root.lo)
    g = poly_gcd(q, root.poly)
    if g.degree > 0:
        # q vanishes at the root iff g does; g's roots are roots of root.poly
        gc = SturmCounter(g)
        if gc.count(root.lo, root.hi) > 0:
            return 0
    qc = SturmCounter(q)
    cur = root
    while qc.count(cur.lo, cur.hi) > 0 or q.eval_sign(cur.lo) == 0 or q.eval_sign(cur.hi) == 0:
        cur = refine_root(cur, cur.width / 4)
        if cur.lo == cur.hi:
            return q.eval_sign(cur.lo)
    return q.eval_sign(cur.mid)


def multiplicity(p: UniPoly, root: RootIsolation) -> int:
    """Multiplicity of the root of ``root.poly`` as a root of ``p``."""
    m = 0
    cur = p
    while cur and sign_at_root(cur, root) == 0:
        m += 1
        cur = cur.derivative()
    return m
