import random
from fractions import Fraction

import pytest

from center_order.catalog import (
    Catalog,
    CatalogError,
    ParseError,
    Sides,
    UnknownCenter,
    eval_center,
    eval_center_squares,
    iso_family_coords,
    key_of,
    label,
    parse_catalog_text,
    parse_center_expr,
    validate_catalog,
)
from center_order.exactnum import QuadExt, rational_sqrt
from center_order.geom import GeometryError, same_point


def _random_sides(rng):
    while True:
        a, b, c = (Fraction(rng.randint(2, 60), rng.randint(1, 9)) for _ in range(3))
        if a + b > c and b + c > a and c + a > b:
            return Sides(a, b, c)


def test_shipped_catalog_is_valid(cat):
    rep = validate_catalog(cat)
    assert rep.ok, rep.failures
    assert all(n in cat for n in range(1, 101))
    assert 650 in cat and "A" in cat and "B" in cat


def test_key_of_and_label():
    assert key_of("X20") == 20
    assert key_of("20") == 20
    assert key_of("c") == "C"
    assert label(20) == "X20" and label("B") == "B"
    with pytest.raises((CatalogError, ValueError)):
        key_of("Q")


def test_unknown_center(cat):
    with pytest.raises(UnknownCenter):
        eval_center(cat, 99999, Sides(3, 4, 5))


def test_parser_errors_and_unary_minus():
    with pytest.raises(ParseError):
        parse_center_expr("a*(b+")
    with pytest.raises(ParseError):
        parse_center_expr("a $ b")
    parse_center_expr("-a^2 + b*c")


def test_parse_catalog_text_reports_bad_lines():
    text = "1 ; a ; incenter\n2 ; a*( ; broken\nnot a line\n"
    cat, errors = parse_catalog_text(text, "mem", strict=False)
    assert 1 in cat.entries and 2 not in cat.entries
    assert len(errors) == 2
    with pytest.raises(CatalogError):
        parse_catalog_text(text, "mem", strict=True)


def test_known_values(cat):
    s = Sides(3, 4, 5)
    assert same_point(eval_center(cat, 1, s), eval_center(cat, 2, s).__class__(Fraction(3), Fraction(4), Fraction(5)))
    P = eval_center(cat, 3, s)  # right angle at C: circumcenter is the midpoint of AB
    assert P.w == 0 and P.u == P.v
    P = eval_center(cat, 4, s)  # orthocenter is vertex C
    assert P.u == 0 and P.v == 0


def test_sides_validation():
    with pytest.raises(GeometryError):
        Sides(1, 2, 3)
    with pytest.raises(GeometryError):
        Sides(-1, 2, 2)
    assert Sides.parse("3,4,5") == Sides(3, 4, 5)
    assert Sides(6, 8, 10).normalized() == Sides(1, Fraction(4, 3), Fraction(5, 3))


def test_zero_triple_raises(cat):
    # X11 at an equilateral triangle has every coordinate zero
    with pytest.raises((CatalogError, GeometryError)):
        eval_center(cat, 11, Sides(1, 1, 1))


def test_squares_mode_x23_on_AC(cat):
    c2 = QuadExt(Fraction(1, 2), Fraction(1, 2), Fraction(61))
    P = eval_center_squares(cat, 23, Fraction(1), Fraction(4), c2)
    assert P.v == 0
    assert P.u == QuadExt(Fraction(-57, 2), Fraction(3, 2), Fraction(61))
    assert P.w == QuadExt(Fraction(33, 2), Fraction(3, 2), Fraction(61))


def test_squares_mode_rejects_U(cat):
    with pytest.raises(CatalogError):
        eval_center_squares(cat, 13, Fraction(1), Fraction(4), Fraction(4))


# -- property suites over every catalog entry, 20 random triangles ---------------------


@pytest.fixture(scope="module")
def triangles():
    rng = random.Random(20)
    return [_random_sides(rng) for _ in range(20)]


def _rebase(P, d):
    """Express every coordinate over the radicand d (they differ by a rational square)."""
    out = []
    for x in P:
        if isinstance(x, QuadExt) and x.rad and x.d != d:
            r = rational_sqrt(Fraction(x.d) / d)
            assert r is not None
            x = QuadExt(x.rat, x.rad * r, d)
        out.append(x)
    return P.__class__(*out)


def _safe_eval(cat, n, s):
    try:
        return eval_center(cat, n, s)
    except (CatalogError, GeometryError):
        return None


def test_homogeneity_all_entries(cat, triangles):
    for n in sorted(cat.entries):
        for s in triangles:
            P = _safe_eval(cat, n, s)
            if P is None:
                continue
            Q = eval_center(cat, n, s.scaled(Fraction(7, 3)))
            assert same_point(P, _rebase(Q, 3 * s.E)), (n, s)


def test_cyclic_consistency_all_entries(cat, triangles):
    for n in sorted(cat.entries):
        for s in triangles:
            P = _safe_eval(cat, n, s)
            if P is None:
                continue
            Q = eval_center(cat, n, Sides(s.b, s.c, s.a))
            assert same_point(Q, P.__class__(P.v, P.w, P.u)), (n, s)


def test_median_symmetry_all_entries(cat):
    for n in range(1, 101):
        p, q, r = iso_family_coords(cat, n)
        assert q == r, n
    # X650 is antisymmetric: on the family it is the point at infinity of BC
    for n in range(1, 101):
        for k in (Fraction(3, 2), Fraction(5), Fraction(7, 9)):
            P = _safe_eval(cat, n, Sides(1, k, k))
            if P is not None:
                assert P.v == P.w, (n, k)


def test_in_memory_catalog():
    cat = Catalog()
    assert len(cat) == 0 and "A" in cat
