from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from center_order.exactnum import (
    DomainError,
    IntervalSign,
    QuadExt,
    RadicandMismatch,
    UniPoly,
    combine_sign,
    isolate_roots,
    multiplicity,
    poly_gcd,
    poly_sign_on_interval,
    quad_sign,
    rational_sqrt,
    refine_root,
    sign_at_root,
    squarefree_part,
    sturm_root_count,
)

x = UniPoly.x()
rats = st.fractions(min_value=-50, max_value=50, max_denominator=50)


def test_quad_sign_basic():
    assert quad_sign(QuadExt(Fraction(1), Fraction(1), 2)) == 1
    assert quad_sign(QuadExt(Fraction(3), Fraction(-2), 2)) == 1  # 3 - 2.828
    assert quad_sign(QuadExt(Fraction(-3), Fraction(2), 2)) == -1
    assert quad_sign(QuadExt(Fraction(3), Fraction(-1), 9)) == 0
    assert quad_sign(QuadExt(0, 0, 5)) == 0


def test_combine_sign_table():
    assert combine_sign(1, 1, -1) == 1
    assert combine_sign(-1, -1, 1) == -1
    assert combine_sign(1, -1, 1) == 1
    assert combine_sign(1, -1, -1) == -1
    assert combine_sign(-1, 1, -1) == 1
    assert combine_sign(1, -1, 0) == 0
    assert combine_sign(0, 0, 0) == 0


def test_radicand_mismatch():
    with pytest.raises(RadicandMismatch):
        QuadExt(Fraction(1), Fraction(1), 2) + QuadExt(Fraction(1), Fraction(1), 3)


def test_division_and_conjugate():
    a = QuadExt(Fraction(1), Fraction(2), 7)
    b = QuadExt(Fraction(3), Fraction(-1), 7)
    q = a / b
    assert q * b == a
    assert (a * a.conjugate()).is_rational
    with pytest.raises(ZeroDivisionError):
        a / QuadExt(0, 0, 7)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None


@settings(max_examples=200, deadline=None)
@given(rats, rats, st.integers(min_value=2, max_value=200))
def test_quad_sign_matches_high_precision(r, s, d):
    exact = quad_sign(QuadExt(r, s, Fraction(d)))
    num = sympy.Rational(r.numerator, r.denominator) + sympy.Rational(s.numerator, s.denominator) * sympy.sqrt(d)
    assert exact == int(sympy.sign(num))


@settings(max_examples=100, deadline=None)
@given(rats, rats, rats, rats, st.integers(min_value=2, max_value=50))
def test_field_axioms(a, b, c, e, d):
    u = QuadExt(a, b, Fraction(d))
    v = QuadExt(c, e, Fraction(d))
    assert u + v == v + u
    assert u * v == v * u
    assert u * (v + 1) == u * v + u
    if v:
        assert (u / v) * v == u


def test_sturm_counts_against_sympy():
    p = (x - 1) * (x - 2) * (x**2 - 2) * (x + 5)
    assert sturm_root_count(p, 0, 3) == 3
    assert sturm_root_count(p, Fraction(-10), Fraction(10)) == 5
    assert sturm_root_count(p, 1, 2) == 1  # open interval: only sqrt(2)
    assert sturm_root_count(x**2 + 1, -10, 10) == 0


def test_poly_sign_on_interval():
    assert poly_sign_on_interval(x**2 - 2, 2, 5) is IntervalSign.POSITIVE
    assert poly_sign_on_interval(x**2 - 2, 0, 1) is IntervalSign.NEGATIVE
    assert poly_sign_on_interval(x**2 - 2, 0, 2) is IntervalSign.MIXED
    assert poly_sign_on_interval(UniPoly(), 0, 2) is IntervalSign.ZERO
    # touching a root only at the open boundary keeps the strict sign
    assert poly_sign_on_interval((x - 1) ** 2, 1, 3) is IntervalSign.POSITIVE


def test_isolate_and_refine():
    p = x**4 - 4 * x**2 + 1  # roots ±sqrt(2 ± sqrt 3)
    roots = isolate_roots(p, 0, 10, width=Fraction(1, 10**8))
    vals = sorted(float(r) for r in roots)
    assert len(vals) == 2
    assert abs(vals[0] - 0.5176380902) < 1e-8
    assert abs(vals[1] - 1.9318516526) < 1e-8
    for r in roots:
        assert r.width <= Fraction(1, 10**8)
        assert p.eval_sign(r.lo) != 0 and p.eval_sign(r.hi) != 0
    fine = refine_root(roots[1], Fraction(1, 2**80))
    assert fine.width <= Fraction(1, 2**80)


def test_isolate_root_at_endpoint():
    # a root exactly at the left end must not stall or be reported
    roots = isolate_roots((x - 1) * (x - 3), 1, 10)
    assert [round(float(r), 6) for r in roots] == [3.0]


def test_sign_at_root_and_multiplicity():
    p = x**2 - 2
    (r,) = isolate_roots(p, 0, 2)
    assert sign_at_root(x - Fraction(3, 2), r) == -1
    assert sign_at_root(x**4 - 4, r) == 0
    assert sign_at_root(x**3 - 2 * x, r) == 0
    assert multiplicity((x**2 - 2) ** 3 * (x + 1), r) == 3


def test_gcd_and_squarefree():
    p = (x - 1) ** 2 * (x + 2)
    q = (x - 1) * (x - 5)
    assert poly_gcd(p, q).monic() == (x - 1).monic()
    assert squarefree_part(p).monic() == ((x - 1) * (x + 2)).monic()


def test_zero_polynomial_errors():
    with pytest.raises(DomainError):
        isolate_roots(UniPoly(), 0, 1)
    with pytest.raises(DomainError):
        sturm_root_count(UniPoly(), 0, 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=8), min_size=1, max_size=5, unique=True))
def test_isolation_finds_all_rational_roots(roots):
    p = UniPoly.from_roots(roots)
    found = isolate_roots(p, -21, 21, width=Fraction(1, 1000))
    assert len(found) == len(roots)
    for r, want in zip(found, sorted(roots)):
        assert r.lo <= want <= r.hi
