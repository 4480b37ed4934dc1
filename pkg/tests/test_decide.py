import random
from fractions import Fraction

import mpmath
import pytest

from center_order.catalog import Sides, eval_center, eval_center_numeric
from center_order.decide import (
    OrderKind,
    RegionKind,
    VerdictKind,
    at_infinity_check,
    classify_above_BC,
    classify_outside_angle_A,
    classify_trace_right_of_C,
    compare,
    compare_iso,
    coincides_with_vertex_A,
    find_coincidence_iso,
)
from center_order.decide.planar import exact_order_sign
from center_order.decide.quantities import order_quantity
from center_order.exactnum import UniPoly, quad_sign
from center_order.families import ACUTE_MIN_A, ISOSCELES_ALL, TALL_ISOSCELES, SamplePlan, iso_sides, sample

F = Fraction
SMALL = SamplePlan(grid_density=6, random_count=600)


def test_iso_examples(cat):
    assert compare_iso(20, 22, cat).kind is VerdictKind.CERTIFIED_PRECEDES
    assert compare_iso(2, 15, cat).kind is VerdictKind.CERTIFIED_PRECEDES
    v = compare_iso(15, 5, cat)
    assert v.kind is VerdictKind.MIXED
    # witnesses are exact tall isosceles triangles with opposite signs
    for w, sgn in ((v.witness_precede, -1), (v.witness_succeed, 1)):
        s = iso_sides(F(w) if not isinstance(w, Sides) else w.b)
        P, Q = eval_center(cat, 15, s), eval_center(cat, 5, s)
        assert quad_sign(order_quantity(OrderKind.ISOSCELES, tuple(P), tuple(Q), s.a, s.b, s.c)) == sgn


def test_iso_antisymmetry(cat):
    for m, n in [(20, 22), (2, 15), (15, 5), (7, 29)]:
        a, b = compare_iso(m, n, cat), compare_iso(n, m, cat)
        assert a.swapped().kind is b.kind
    assert compare(OrderKind.ISOSCELES, 4, 4).kind is VerdictKind.EQUAL


def test_certified_iso_spot_check(cat):
    # a certified verdict must hold at random exact parameters
    rng = random.Random(11)
    for m, n in [(20, 22), (2, 15), (25, 24), (7, 29)]:
        v = compare_iso(m, n, cat)
        assert v.kind is VerdictKind.CERTIFIED_PRECEDES
        for _ in range(100):
            k = F(rng.randint(1001, 40000), 1000)
            s = iso_sides(k)
            P, Q = eval_center(cat, m, s), eval_center(cat, n, s)
            assert quad_sign(order_quantity(OrderKind.ISOSCELES, tuple(P), tuple(Q), s.a, s.b, s.c)) == -1


def test_planar_examples(cat):
    v = compare(OrderKind.VERTEX, 3, 9, plan=SMALL, certify=False)
    assert v.direction == "precedes" and v.stats["succeeds"] == 0
    v = compare(OrderKind.SIDE, 26, 20, plan=SMALL, certify=False)
    assert v.direction == "precedes"
    v = compare(OrderKind.TRACE, 24, "C", plan=SMALL, certify=False)
    assert v.kind in (VerdictKind.UNDETERMINED, VerdictKind.MIXED)


def test_planar_mixed_witnesses(cat):
    v = compare(OrderKind.VERTEX, 18, 3, plan=SMALL, certify=False)
    assert v.kind is VerdictKind.MIXED
    assert exact_order_sign(cat, OrderKind.VERTEX, 18, 3, v.witness_precede) == -1
    assert exact_order_sign(cat, OrderKind.VERTEX, 18, 3, v.witness_succeed) == 1


def test_outside_angle_examples(cat):
    assert classify_outside_angle_A(4, ISOSCELES_ALL).kind is RegionKind.SOMETIMES
    assert classify_outside_angle_A(1, ISOSCELES_ALL).kind is RegionKind.NEVER
    assert classify_outside_angle_A(18, TALL_ISOSCELES).kind is RegionKind.SOMETIMES


def test_above_bc_examples(cat):
    assert classify_above_BC(2, plan=SMALL).kind is RegionKind.ALWAYS_ABOVE
    assert classify_above_BC(11, plan=SMALL).kind is RegionKind.ALWAYS_ON_OR_ABOVE
    assert classify_above_BC(16, plan=SMALL).kind is RegionKind.ALWAYS_BELOW
    assert classify_above_BC(30, plan=SMALL).kind is RegionKind.AT_INFINITY


def test_trace_examples(cat):
    w = Sides(1, F(12, 11), F(16, 11))
    v = classify_trace_right_of_C(23, plan=SMALL, extra=[w])
    assert v.kind is RegionKind.SOMETIMES and v.witness_out == w
    assert classify_trace_right_of_C(2, plan=SMALL).kind is RegionKind.NEVER
    assert classify_trace_right_of_C(7, plan=SMALL).kind is RegionKind.NEVER


def test_vertex_a_examples(cat):
    assert coincides_with_vertex_A(59).kind is RegionKind.IDENTICALLY_AT_A
    assert coincides_with_vertex_A(2).kind is RegionKind.NEVER
    v = coincides_with_vertex_A(26)
    assert v.kind is RegionKind.AT_ISOLATED_PARAMETERS
    target = UniPoly([1, 0, -4, 0, 2])  # 2k^4 - 4k^2 + 1
    assert any(abs(float(r.mid) - 1.306563) < 1e-6 and (target % r.poly).is_zero()
               for r in v.roots)


def test_coincidence_examples(cat):
    r = find_coincidence_iso(5, 15, cat=cat)
    assert len(r) == 1 and abs(r[0].approx - 1.93185165) < 1e-8
    r = find_coincidence_iso(29, 6, cat=cat)
    assert any(abs(x.approx - 1.28077641) < 1e-8 for x in r)
    r = find_coincidence_iso(12, 15, cat=cat)
    assert any(abs(x.approx - 7.25054) < 1e-5 for x in r)
    assert all(x.residual <= 1e-20 for x in r)


def test_at_infinity(cat):
    assert at_infinity_check(30, "identity")
    assert not at_infinity_check(2, "identity")
    assert not at_infinity_check(2, Sides(3, 4, 5))


def _oracle_sign(cat, kind, m, n, s):
    """Sign from Cartesian coordinates at 256 bits, or None inside the margin."""
    with mpmath.workprec(256):
        a, b, c = (mpmath.mpf(x.numerator) / x.denominator for x in (s.a, s.b, s.c))
        ax = (a * a + c * c - b * b) / (2 * a)
        ay = mpmath.sqrt(c * c - ax * ax)
        vals = []
        for i in (m, n):
            p, q, r = eval_center_numeric(cat, i, s)
            if kind is OrderKind.TRACE:
                vals.append(a * r / (q + r))  # trace abscissa; nearer B precedes
                continue
            t = p + q + r
            x, y = (p * ax + r * a) / t, p * ay / t
            vals.append((x - ax) ** 2 + (y - ay) ** 2 if kind is OrderKind.VERTEX else -y)
        d = vals[0] - vals[1]
        if abs(d) < mpmath.mpf(10) ** -30 * max(1, abs(vals[0])):
            return None
        return 1 if d > 0 else -1


def test_exact_matches_high_precision_oracle(cat):
    rng = random.Random(5)
    pool = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 16, 17, 19, 20, 21, 22]
    pairs = [tuple(rng.sample(pool, 2)) for _ in range(20)]
    kinds = [OrderKind.VERTEX, OrderKind.SIDE, OrderKind.TRACE]
    samples = sample(ACUTE_MIN_A, SamplePlan(grid_density=10, random_count=1000), key="oracle")[:1000]
    checked = 0
    for j, (m, n) in enumerate(pairs):
        kind = kinds[j % 3]
        for s in samples:
            e = exact_order_sign(cat, kind, m, n, s)
            o = _oracle_sign(cat, kind, m, n, s)
            if e is None or o is None:
                continue
            assert e == o, (kind, m, n, s)
            checked += 1
    assert checked > 19000
