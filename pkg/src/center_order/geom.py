"""Barycentric predicates and metrics.

Every decision goes through :func:`quad_sign`; boundary cases (on a
sideline, at a vertex, at infinity) are reported explicitly, never folded
into a strict sign.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import QuadExt, quad_sign


class GeometryError(ValueError):
    pass


class AtInfinityError(GeometryError):
    pass


class Position(enum.Enum):
    ABOVE = "Above"
    ON = "On"
    BELOW = "Below"
    AT_INFINITY = "AtInfinity"


AT_INFINITY = "AT-INFINITY"


def _sign(x) -> int:
    return quad_sign(x)


def _is_zero(x) -> bool:
    return _sign(x) == 0


@dataclass(frozen=True)
class BaryPoint:
    """Homogeneous barycentric coordinates (u : v : w)."""

    u: object
    v: object
    w: object

    def __post_init__(self):
        if _is_zero(self.u) and _is_zero(self.v) and _is_zero(self.w):
            raise GeometryError("zero triple is not a point")

    def __iter__(self):
        return iter((self.u, self.v, self.w))

    @property
    def total(self):
        return self.u + self.v + self.w

    @property
    def at_infinity(self) -> bool:
        return _is_zero(self.total)

    def scaled(self, k) -> BaryPoint:
        return BaryPoint(self.u * k, self.v * k, self.w * k)

    def __str__(self):
        return f"({self.u}:{self.v}:{self.w})"


VERTEX_A = BaryPoint(Fraction(1), Fraction(0), Fraction(0))
VERTEX_B = BaryPoint(Fraction(0), Fraction(1), Fraction(0))
VERTEX_C = BaryPoint(Fraction(0), Fraction(0), Fraction(1))


@dataclass(frozen=True)
class RegionCode:
    sign_u: int
    sign_v: int
    sign_w: int

    @property
    def interior(self) -> bool:
        return (self.sign_u, self.sign_v, self.sign_w) == (1, 1, 1)

    def __str__(self):
        sym = {1: "+", 0: "0", -1: "-"}
        return sym[self.sign_u] + sym[self.sign_v] + sym[self.sign_w]


def normalize(P: BaryPoint):
    """Coordinates scaled to sum 1, or the ``AT_INFINITY`` marker."""
    s = P.total
    if _is_zero(s):
        return AT_INFINITY
    return (P.u / s, P.v / s, P.w / s)


def region_of(P: BaryPoint) -> RegionCode:
    """Signs of the normalized coordinates (seven open regions + boundaries)."""
    s = P.total
    if _is_zero(s):
        raise AtInfinityError("point at infinity has no region")
    ss = _sign(s)
    return RegionCode(_sign(P.u) * ss, _sign(P.v) * ss, _sign(P.w) * ss)


def inside_angle_A(P: BaryPoint) -> bool:
    """Strictly inside the open angle at A: v*(u+v+w) > 0 and w*(u+v+w) > 0."""
    s = P.total
    if _is_zero(s):
        raise AtInfinityError("inside-angle test undefined at infinity")
    return _sign(P.v) * _sign(s) > 0 and _sign(P.w) * _sign(s) > 0


def above_BC(P: BaryPoint) -> Position:
    s = P.total
    if _is_zero(s):
        return Position.AT_INFINITY
    t = _sign(P.u) * _sign(s)
    if t > 0:
        return Position.ABOVE
    if t < 0:
        return Position.BELOW
    return Position.ON


def signed_height_ratio(P: BaryPoint):
    """rho = u/(u+v+w); the signed distance to BC is (2K/a)*rho."""
    s = P.total
    if _is_zero(s):
        raise AtInfinityError("signed distance undefined at infinity")
    return P.u / s


def squared_distance(P: BaryPoint, Q: BaryPoint, sides) -> object:
    """|PQ|^2 from the normalized displacement (x, y, z): -a²yz - b²zx - c²xy."""
    nP, nQ = normalize(P), normalize(Q)
    if nP is AT_INFINITY or nQ is AT_INFINITY:
        raise AtInfinityError("distance to a point at infinity")
    x, y, z = (q - p for p, q in zip(nP, nQ))
    a2, b2, c2 = sides.a**2, sides.b**2, sides.c**2
    return -(a2 * y * z) - b2 * z * x - c2 * x * y


def squared_distance_to_A(P: BaryPoint, sides) -> object:
    return squared_distance(VERTEX_A, P, sides)


def squared_dist_point_to_line(P: BaryPoint, line, sides) -> object:
    """Square of the distance from P to the line ux + vy + wz = 0."""
    u, v, w = (Fraction(t) if isinstance(t, int) else t for t in line)
    a2, b2, c2 = sides.a**2, sides.b**2, sides.c**2
    E = sides.E
    s = P.total
    if _is_zero(s):
        raise AtInfinityError("distance from a point at infinity")
    den = a2 * (u - v) * (u - w) + (v - w) * (b2 * (v - u) + c2 * (u - w))
    if _is_zero(den):
        raise GeometryError("degenerate line (line at infinity)")
    lin = P.u * u + P.v * v + P.w * w
    return E * lin * lin / (4 * s * s * den)


def atrace(P: BaryPoint) -> BaryPoint:
    """Intersection of line AP with line BC: (0 : v : w)."""
    if _is_zero(P.v) and _is_zero(P.w):
        raise GeometryError("A-trace undefined for P = A")
    return BaryPoint(P.u * 0, P.v, P.w)


def trace_signed_dist_to_C(P: BaryPoint, a) -> object:
    """a*v/(v+w): positive on ray CB, negative beyond C."""
    if _is_zero(P.v) and _is_zero(P.w):
        raise GeometryError("A-trace undefined for P = A")
    t = P.v + P.w
    if _is_zero(t):
        raise AtInfinityError("A-trace at infinity (AP parallel to BC)")
    return a * P.v / t


def trace_right_of_C(P: BaryPoint) -> bool:
    """True iff the A-trace lies on the extension of BC beyond C."""
    if _is_zero(P.v) and _is_zero(P.w):
        raise GeometryError("A-trace undefined for P = A")
    return _sign(P.v) * _sign(P.v + P.w) < 0


def cross(P: BaryPoint, Q: BaryPoint) -> tuple:
    return (
        P.v * Q.w - P.w * Q.v,
        P.w * Q.u - P.u * Q.w,
        P.u * Q.v - P.v * Q.u,
    )


def same_point(P: BaryPoint, Q: BaryPoint) -> bool:
    """Proportional triples: every 2x2 minor vanishes."""
    return all(_is_zero(m) for m in cross(P, Q))


def collinear(P: BaryPoint, Q: BaryPoint, R: BaryPoint) -> bool:
    det = (
        P.u * (Q.v * R.w - Q.w * R.v)
        - P.v * (Q.u * R.w - Q.w * R.u)
        + P.w * (Q.u * R.v - Q.v * R.u)
    )
    return _is_zero(det)


def as_quad(x, radicand) -> QuadExt:
    return x if isinstance(x, QuadExt) else QuadExt(Fraction(x), 0, radicand)
