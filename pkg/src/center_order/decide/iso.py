"""Certified decisions on the isosceles family (1, k, k).

On this family q = r for every center, so a center is described by the pair
(p(k), q(k)) of elements of Q[k] + Q[k]·√R with R = 3(4k² - 1).  With
s = p + 2q the squared distance to A is (4k² - 1)·q²/s², which turns every
comparison into the sign of a single form A + B√R.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath
import sympy

from ..catalog import Catalog, CatalogError, default_catalog, eval_center_numeric, iso_family_coords
from ..exactnum import QuadExt, RootIsolation, UniPoly, isolate_roots, poly_gcd, refine_root, sign_at_root
from ..families import TALL_ISOSCELES, TriangleFamily, iso_sides
from .univariate import SignProfile, form_sign_profile, quad_form_parts
from .verdicts import (
    CoincidenceRoot,
    IdenticallyEqual,
    NotComparable,
    OrderKind,
    RegionKind,
    RegionVerdict,
    Verdict,
    VerdictKind,
)

R_ISO = 3 * (4 * UniPoly.x() ** 2 - 1)


@lru_cache(maxsize=None)
def iso_pair(cat: Catalog, n) -> tuple[QuadExt, QuadExt]:
    """Raw (p, q) on the family; q = r is asserted."""
    p, q, r = iso_family_coords(cat, n)
    if q.rat != r.rat or q.rad != r.rad:
        raise CatalogError(f"{n}: coordinates break the median symmetry q = r")
    return _as_form(p), _as_form(q)


def _as_form(x: QuadExt) -> QuadExt:
    rat = x.rat if isinstance(x.rat, UniPoly) else UniPoly.const(x.rat)
    rad = x.rad if isinstance(x.rad, UniPoly) else UniPoly.const(x.rad)
    return QuadExt(rat, rad, R_ISO)


@lru_cache(maxsize=None)
def iso_pair_reduced(cat: Catalog, n) -> tuple[QuadExt, QuadExt]:
    """(p, q) with the common polynomial content removed."""
    p, q = iso_pair(cat, n)
    parts = [x for x in (p.rat, p.rad, q.rat, q.rad) if x]
    g = parts[0]
    for x in parts[1:]:
        g = poly_gcd(g, x)
    if g.degree <= 0:
        return p, q

    def div(x):
        return x / g if x else x

    return QuadExt(div(p.rat), div(p.rad), R_ISO), QuadExt(div(q.rat), div(q.rad), R_ISO)


def _profile(x: QuadExt, lo) -> SignProfile:
    A, B, _ = quad_form_parts(x)
    return form_sign_profile(A, B, R_ISO, lo)


def _k_witness(cell_or_point):
    if cell_or_point is None:
        return None
    if isinstance(cell_or_point[0], RootIsolation):
        return cell_or_point[0]
    return iso_sides(cell_or_point[2])


def _check_finite(cat, n, lo):
    p, q = iso_pair_reduced(cat, n)
    s = p + 2 * q
    prof = _profile(s, lo)
    if prof.identically_zero:
        raise NotComparable(f"X{n} lies on the line at infinity for every triangle of the family")
    if prof.strict_sign is None:
        return prof
    return None


def compare_iso(m, n, cat: Catalog | None = None, family: TriangleFamily = TALL_ISOSCELES) -> Verdict:
    """Certified comparison of distances to A over the isosceles family."""
    cat = cat or default_catalog()
    lo = family.k_lower
    order = OrderKind.ISOSCELES
    for c in (m, n):
        bad = _check_finite(cat, c, lo)
        if bad is not None:
            return Verdict(order, m, n, VerdictKind.DEGENERATE, note=f"X{c} reaches the line at infinity inside the family")
    pm, qm = iso_pair_reduced(cat, m)
    pn, qn = iso_pair_reduced(cat, n)
    sm, sn = pm + 2 * qm, pn + 2 * qn
    # d_m^2 - d_n^2 has the sign of (qm sn - qn sm)(qm sn + qn sm)
    X = qm * sn - qn * sm
    Y = qm * sn + qn * sm
    F = X * Y
    prof = _profile(F, lo)
    stats = {"cells": len(prof.cells), "boundary_roots": len(prof.points)}
    if prof.identically_zero:
        return Verdict(order, m, n, VerdictKind.EQUAL, certificate=prof.certificate(), stats=stats,
                       note="equal distance to A on the whole family")
    s = prof.strict_sign
    if s == -1:
        return Verdict(order, m, n, VerdictKind.CERTIFIED_PRECEDES, certificate=prof.certificate(), stats=stats)
    if s == 1:
        return Verdict(order, m, n, VerdictKind.CERTIFIED_SUCCEEDS, certificate=prof.certificate(), stats=stats)
    neg = prof.cell_with_sign(-1)
    pos = prof.cell_with_sign(1)
    if neg is not None and pos is not None:
        return Verdict(order, m, n, VerdictKind.MIXED, witness_precede=_k_witness(neg),
                       witness_succeed=_k_witness(pos), stats=stats)
    # one strict sign on every cell, touching zero at isolated parameters
    touch = prof.point_with_sign(0)
    kind = VerdictKind.WEAK_PRECEDES if neg is not None else VerdictKind.WEAK_SUCCEEDS
    return Verdict(order, m, n, kind, certificate=prof.certificate(), witness_precede=_k_witness(neg),
                   witness_succeed=_k_witness(pos), stats=stats,
                   note=f"distances agree at k = {float(touch[0]):.12g}")


# -- region predicates ---------------------------------------------------------


def classify_outside_angle_A_iso(n, family: TriangleFamily, cat: Catalog | None = None) -> RegionVerdict:
    """Exact decision of 'v(u+v+w) <= 0 or w(u+v+w) <= 0 for some k'."""
    cat = cat or default_catalog()
    p, q = iso_pair(cat, n)
    s = p + 2 * q
    prof = _profile(q * s, family.k_lower)
    pred = "outside-angle-a"
    note = "at infinity on the whole family" if _profile(s, family.k_lower).identically_zero else ""
    if prof.strict_sign == 1:
        return RegionVerdict(pred, n, family.name, RegionKind.NEVER, witness_in=_k_witness(prof.cells[0]),
                             certificate=prof.certificate(), note=note)
    if prof.identically_zero:
        return RegionVerdict(pred, n, family.name, RegionKind.SOMETIMES, witness_out=iso_sides(2),
                             certificate={"method": "identity"},
                             note=note or "v(u+v+w) vanishes identically")
    out = prof.cell_with_sign(-1) or prof.cell_with_sign(0) or prof.point_with_sign(0) or prof.point_with_sign(-1)
    inside = prof.cell_with_sign(1)
    kind = RegionKind.SOMETIMES if inside is not None else RegionKind.ALWAYS
    return RegionVerdict(pred, n, family.name, kind, witness_in=_k_witness(inside), witness_out=_k_witness(out),
                         certificate=prof.certificate(), note=note)


def coincides_with_vertex_A_iso(n, family: TriangleFamily, cat: Catalog | None = None) -> RegionVerdict:
    cat = cat or default_catalog()
    p, q = iso_pair(cat, n)
    pred = "at-vertex-a"
    if not q:
        return RegionVerdict(pred, n, family.name, RegionKind.IDENTICALLY_AT_A, certificate={"method": "identity"})
    prof = _profile(q, family.k_lower)
    roots = [pt[0] for pt in prof.points if pt[1] == 0]
    # discard parameters where the whole triple vanishes
    roots = [_tidy_root(r) for r in roots if _sign_form_at(p, r) != 0]
    if roots:
        return RegionVerdict(pred, n, family.name, RegionKind.AT_ISOLATED_PARAMETERS, roots=roots,
                             certificate=prof.certificate())
    return RegionVerdict(pred, n, family.name, RegionKind.NEVER, certificate=prof.certificate())


def _tidy_root(r: RootIsolation, width=Fraction(1, 10**8)) -> RootIsolation:
    """Same root, described by its irreducible factor and a narrow interval."""
    f = _factor_containing(r.poly, r)
    iso = isolate_roots(f, r.lo, r.hi, width=width)
    return iso[0] if len(iso) == 1 else refine_root(r, width)


def _sign_form_at(x: QuadExt, root: RootIsolation) -> int:
    from ..exactnum import combine_sign

    A, B, _ = quad_form_parts(x)
    if not B:
        return sign_at_root(A, root)
    N = A * A - B * B * R_ISO
    return combine_sign(sign_at_root(A, root), sign_at_root(B, root), sign_at_root(N, root))


def at_infinity_iso(n, cat: Catalog | None = None) -> bool:
    """True iff the coordinate sum vanishes identically in k."""
    cat = cat or default_catalog()
    p, q = iso_pair(cat, n)
    return not (p + 2 * q)


# -- coincidences ---------------------------------------------------------------


def _factor_containing(N: UniPoly, root: RootIsolation) -> UniPoly:
    """Irreducible factor over Q of N that vanishes at the isolated root."""
    k = sympy.Symbol("k")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * k**i for i, c in enumerate(N.coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, k))
    for fac, _mult in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        f = UniPoly(coeffs)
        if f.degree > 0 and sign_at_root(f, root) == 0:
            return f.primitive()
    return N.primitive()


def _numeric_residual(cat, m, n, k_mid: Fraction, bits: int) -> float:
    with mpmath.workprec(bits):
        k = mpmath.mpf(k_mid.numerator) / k_mid.denominator
        P = eval_center_numeric(cat, m, (mpmath.mpf(1), k, k), bits)
        Q = eval_center_numeric(cat, n, (mpmath.mpf(1), k, k), bits)
        cross = (P[1] * Q[2] - P[2] * Q[1], P[2] * Q[0] - P[0] * Q[2], P[0] * Q[1] - P[1] * Q[0])
        scale = max(abs(x) for x in P) * max(abs(x) for x in Q)
        if scale == 0:
            return float("inf")
        return float(max(abs(c) for c in cross) / scale)


def find_coincidence_iso(m, n, k_range=(Fraction(1), Fraction(10)), cat: Catalog | None = None,
                         width=Fraction(1, 10**8), precision_bits: int = 256) -> list[CoincidenceRoot]:
    """Parameters k in k_range where X_m and X_n coincide on (1, k, k)."""
    cat = cat or default_catalog()
    lo, hi = Fraction(k_range[0]), Fraction(k_range[1])
    pm, qm = iso_pair_reduced(cat, m)
    pn, qn = iso_pair_reduced(cat, n)
    C = pm * qn - qm * pn
    A, B, _ = quad_form_parts(C)
    if not A and not B:
        raise IdenticallyEqual(f"X{m} and X{n} coincide on the whole family")
    N = A if not B else A * A - B * B * R_ISO
    out = []
    for r in isolate_roots(N, lo, hi, width=Fraction(width)):
        if _sign_form_at(C, r) != 0:
            continue  # root of the conjugate form only
        f = _factor_containing(N, r)
        iso = isolate_roots(f, r.lo, r.hi, width=Fraction(width))
        iso = iso[0] if iso else RootIsolation(f, r.lo, r.hi)
        fine = refine_root(iso, Fraction(1, 2**200))
        res = _numeric_residual(cat, m, n, fine.mid, precision_bits)
        if res > 1e-20:
            continue
        out.append(CoincidenceRoot(iso, f, res, precision_bits))
    return out
