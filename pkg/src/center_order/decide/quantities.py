"""Comparison quantities written once over any ring.

Each function works for exact values (QuadExt/Fraction), for polynomial
rings and for kernel registers, so the interval filter and the exact
re-check evaluate literally the same formula.

Convention: ``order_quantity`` returns D with D < 0 exactly when X_m
strictly precedes X_n, provided every value in ``order_denominators`` is
nonzero for both points.
"""

from __future__ import annotations

from .verdicts import OrderKind


def dist2_to_A_numerator(P, a, b, c):
    """N with |A P|² = N / s², s = u + v + w."""
    _, q, r = P
    return -(a * a) * q * r + (b * b) * r * (q + r) + (c * c) * q * (q + r)


def vertex_quantity(P, Q, a, b, c):
    sP = P[0] + P[1] + P[2]
    sQ = Q[0] + Q[1] + Q[2]
    return dist2_to_A_numerator(P, a, b, c) * sQ * sQ - dist2_to_A_numerator(Q, a, b, c) * sP * sP


def side_quantity(P, Q, a, b, c):
    # larger p/s precedes
    sP = P[0] + P[1] + P[2]
    sQ = Q[0] + Q[1] + Q[2]
    return -(P[0] * sQ - Q[0] * sP) * sP * sQ


def trace_quantity(P, Q, a, b, c):
    # larger q/(q+r) precedes (the common factor a > 0 drops out)
    tP = P[1] + P[2]
    tQ = Q[1] + Q[2]
    return -(P[1] * tQ - Q[1] * tP) * tP * tQ


def order_quantity(kind: OrderKind, P, Q, a, b, c):
    if kind in (OrderKind.VERTEX, OrderKind.ISOSCELES):
        return vertex_quantity(P, Q, a, b, c)
    if kind is OrderKind.SIDE:
        return side_quantity(P, Q, a, b, c)
    return trace_quantity(P, Q, a, b, c)


def order_denominators(kind: OrderKind, P) -> list:
    """Values that must be nonzero for the order quantity of P to exist."""
    if kind is OrderKind.TRACE:
        return [P[1] + P[2]]
    return [P[0] + P[1] + P[2]]


# region predicates: value whose sign decides the predicate


def above_quantity(P):
    """u(u+v+w): > 0 above BC, < 0 below, 0 on BC or at infinity."""
    return P[0] * (P[0] + P[1] + P[2])


def inside_angle_quantities(P):
    s = P[0] + P[1] + P[2]
    return P[1] * s, P[2] * s


def trace_right_quantity(P):
    """q(q+r): negative exactly when the A-trace lies beyond C."""
    return P[1] * (P[1] + P[2])
