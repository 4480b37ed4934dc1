"""End-to-end acceptance checks; one summary line per criterion is printed at the end of the run."""

import os
from fractions import Fraction

import mpmath
import pytest

from center_order.catalog import Sides, eval_center_squares
from center_order.decide import (
    OrderKind,
    RegionKind,
    VerdictKind,
    at_infinity_identity,
    classify_above_BC,
    classify_outside_angle_A,
    classify_trace_right_of_C,
    compare,
    coincides_with_vertex_A,
    find_coincidence_iso,
    numeric_sum_ratio,
    numeric_vertex_distance,
)
from center_order.exactnum import QuadExt, UniPoly
from center_order.families import ISOSCELES_ALL, TALL_ISOSCELES, SamplePlan
from center_order.ordergraph import PAPER_CHAINS, articulation_points, build_graph, transitive_reduction

F = Fraction
PLAN = SamplePlan()  # 40x40 grid plus 10^4 random triangles
JOBS = max(1, min(8, os.cpu_count() or 1))

OUTSIDE_ISO = {4, 5, 11, 13, 14, 16, 17, 18, 19, 22, 23, 24, 25, 26, 27, 28, 29, 33, 34, 36, 44, 46, 47, 48,
               49, 50, 51, 52, 53, 54, 59, 62, 64, 66, 67, 68, 70, 73, 74, 77, 79, 80, 84, 87, 88, 90, 91, 92,
               93, 94, 95, 96, 97, 98, 99, 100}
OUTSIDE_TALL = {18, 26, 30, 59, 68, 70, 87, 90, 91, 93, 96, 99, 100}
AT_VERTEX_A = {59, 99, 100}
ALWAYS_ABOVE = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 15, 17, 19, 20, 21, 22, 25, 26, 27, 28, 29, 31, 32, 33, 34,
                35, 37, 38, 39, 40, 41, 42, 45, 48, 51, 53, 54, 55, 56, 57, 58, 59, 60, 61, 63, 65, 68, 69, 71,
                72, 73, 75, 76, 77, 78, 79, 81, 82, 83, 85, 86, 89, 92, 95, 97, 99, 100}
ALWAYS_BELOW = {16, 23, 36, 44, 50}
MIXED_BC = {14, 18, 24, 43, 46, 47, 49, 52, 62, 64, 66, 67, 70, 74, 80, 84, 87, 88, 90, 91, 93, 94, 96, 98}
RIGHT_OF_C = [23, 36, 44, 50, 64, 66, 84, 99, 100]


def _iso_links(chain, cat):
    return [(m, n, compare(OrderKind.ISOSCELES, m, n, cat=cat)) for m, n in zip(chain, chain[1:])]


def _planar_chain(kind, chain, cat):
    """Every link at >= 10^4 exact-sign samples with subdivision attempted."""
    rows = []
    for m, n in zip(chain, chain[1:]):
        v = compare(kind, m, n, plan=PLAN, cat=cat, certify=True)
        rows.append((m, n, v))
    return rows


def test_c01_iso24_chain(cat, criterion):
    with criterion.check(1, "isosceles 24-chain certified") as info:
        import time

        t0 = time.perf_counter()
        links = _iso_links(PAPER_CHAINS["iso24"], cat)
        dt = time.perf_counter() - t0
        bad = [(m, n, v.kind.value) for m, n, v in links if v.kind is not VerdictKind.CERTIFIED_PRECEDES]
        info["detail"] = f"{len(links) - len(bad)}/23 Sturm-certified in {dt:.1f}s"
        assert len(links) == 23 and not bad, bad
        assert all(v.certificate for _, _, v in links)
        assert dt < 300


def test_c02_iso100_chain(cat, criterion):
    with criterion.check(2, "isosceles 48-center chain") as info:
        links = _iso_links(PAPER_CHAINS["iso48"], cat)
        certified = [(m, n) for m, n, v in links if v.kind is VerdictKind.CERTIFIED_PRECEDES]
        others = {(m, n): v for m, n, v in links if v.kind is not VerdictKind.CERTIFIED_PRECEDES}
        info["detail"] = f"{len(certified)}/47 certified; other links: " + ", ".join(
            f"X{m}/X{n}={v.kind.value}" for (m, n), v in others.items())
        assert len(links) == 47
        # the only non-certified link: X98 and X74 are equidistant from A on the whole family
        assert set(others) == {(98, 74)}
        assert others[(98, 74)].kind is VerdictKind.EQUAL
        pytest.xfail("X98 and X74 are at equal distance from A for every tall isosceles triangle; "
                     "the strict link X98 < X74 cannot hold (46/47 links certified)")


def test_c03_bounds(cat, criterion):
    with criterion.check(3, "bounding chains certified") as info:
        for name in ("bound15", "bound24", "bound29"):
            for m, n, v in _iso_links(PAPER_CHAINS[name], cat):
                assert v.kind is VerdictKind.CERTIFIED_PRECEDES, (m, n, v.kind)
        info["detail"] = "X2<X15<X17, X25<X24<X14, X7<X29<X4"


def test_c04_classification_sets(cat, criterion):
    with criterion.check(4, "classification sets") as info:
        out_iso, out_tall, at_a = set(), set(), set()
        for n in range(1, 101):
            v = classify_outside_angle_A(n, ISOSCELES_ALL, cat=cat)
            if v.kind is RegionKind.SOMETIMES:
                out_iso.add(n)
                assert v.witness_out is not None or n == 30
            if classify_outside_angle_A(n, TALL_ISOSCELES, cat=cat).kind in (RegionKind.SOMETIMES,
                                                                               RegionKind.ALWAYS):
                out_tall.add(n)
            if coincides_with_vertex_A(n, ISOSCELES_ALL, cat=cat).kind is RegionKind.IDENTICALLY_AT_A:
                at_a.add(n)
        assert out_iso - {30} == OUTSIDE_ISO, out_iso ^ OUTSIDE_ISO
        assert out_tall == OUTSIDE_TALL
        assert at_a == AT_VERTEX_A
        parts = {}
        for n in range(1, 101):
            v = classify_above_BC(n, plan=PLAN, cat=cat)
            parts.setdefault(v.kind, set()).add(n)
            if v.kind is RegionKind.SOMETIMES:
                assert v.witness_in is not None and v.witness_out is not None
            elif v.kind is not RegionKind.AT_INFINITY:
                assert v.samples_tested >= 10**4
        assert parts[RegionKind.ALWAYS_ABOVE] == ALWAYS_ABOVE
        assert parts[RegionKind.ALWAYS_ON_OR_ABOVE] == {11}
        assert parts[RegionKind.AT_INFINITY] == {30}
        assert parts[RegionKind.ALWAYS_BELOW] == ALWAYS_BELOW
        assert parts[RegionKind.SOMETIMES] == MIXED_BC
        info["detail"] = (f"outside-A {len(out_iso - {30})} (+X30 at infinity), tall {len(out_tall)}, "
                          f"vertex-A {sorted(at_a)}, above-BC {len(ALWAYS_ABOVE)}/1/1/5/{len(MIXED_BC)}")


def _chain_detail(rows):
    rates = [v.certificate["success_rate"] for _, _, v in rows if v.certificate]
    n_min = min(v.samples_tested for _, _, v in rows)
    return (f"{len(rows)} links, >= {n_min} samples each, zero counterexamples; "
            f"subdivision success rate mean {sum(rates) / len(rates):.4f}, min {min(rates):.4f}")


def _assert_chain(rows):
    for m, n, v in rows:
        assert v.direction == "precedes" and v.stats["succeeds"] == 0, (m, n, v.kind, v.stats)
        assert v.samples_tested >= 10**4
        assert v.certificate is not None and "success_rate" in v.certificate


@pytest.mark.slow
def test_c05_vertex_chain(cat, criterion):
    with criterion.check(5, "vertex order chain") as info:
        rows = _planar_chain(OrderKind.VERTEX, PAPER_CHAINS["vertex"], cat)
        _assert_chain(rows)
        info["detail"] = _chain_detail(rows)


@pytest.mark.slow
def test_c06_side_and_trace_chains(cat, criterion):
    with criterion.check(6, "side 22-chain and trace 21-chain") as info:
        side = _planar_chain(OrderKind.SIDE, PAPER_CHAINS["side"], cat)
        trace = _planar_chain(OrderKind.TRACE, PAPER_CHAINS["trace"], cat)
        assert len(side) == 21 and len(trace) == 20
        _assert_chain(side)
        _assert_chain(trace)
        info["detail"] = "side: " + _chain_detail(side) + "; trace: " + _chain_detail(trace)


@pytest.mark.slow
def test_c07_trace_extras(cat, criterion):
    with criterion.check(7, "trace extras") as info:
        v650 = compare(OrderKind.TRACE, 650, "B", plan=PLAN, cat=cat, certify=False)
        assert v650.direction == "precedes" and v650.stats["succeeds"] == 0 and v650.samples_tested >= 10**4
        w = Sides(1, F(12, 11), F(16, 11))  # the 11-12-16 triangle
        for n in RIGHT_OF_C:
            v = classify_trace_right_of_C(n, plan=SamplePlan(grid_density=2, random_count=20), cat=cat, extra=[w])
            assert v.kind is RegionKind.SOMETIMES and v.witness_out == w, n
        right = {n for n in range(1, 30) if classify_trace_right_of_C(n, plan=PLAN, cat=cat).kind
                 is RegionKind.SOMETIMES}
        assert right == {16, 23, 26}, right
        vc = compare(OrderKind.TRACE, "C", 24, plan=PLAN, cat=cat, certify=False)
        info["detail"] = (f"X650<B ok; 11-12-16 witnesses all 9; right-of-C among 1..29 = {sorted(right)}; "
                          f"C vs X24: direction {vc.direction}, {vc.stats['precedes']} precede / "
                          f"{vc.stats['succeeds']} succeed")
        assert vc.stats["precedes"] == 0 and vc.direction == "succeeds"
        pytest.xfail("computed X24 < C at every sample (the A-trace of X24 stays strictly between B and C), "
                     "so C < X24 is not reproduced")


def test_c08_coincidence_roots(cat, criterion):
    with criterion.check(8, "coincidence roots") as info:
        cases = [
            ((5, 15), 1.931852, UniPoly([1, 0, -4, 0, 1])),
            ((11, 24), 1.306563, UniPoly([1, 0, -4, 0, 2])),
            ((29, 6), 1.280776, UniPoly([-2, -1, 2])),
            ((12, 15), 7.25054, UniPoly([-1, 1, 6, 0, -11, -13, 2])),
        ]
        found = []
        for (m, n), k, poly in cases:
            roots = find_coincidence_iso(m, n, cat=cat)
            hit = [r for r in roots if abs(r.approx - k) < 1e-5]
            assert len(hit) == 1, (m, n, [r.approx for r in roots])
            r = hit[0]
            assert abs(r.approx - k) <= 1e-6 if k != 7.25054 else abs(r.approx - k) <= 5e-6
            assert (poly % r.defining_polynomial).is_zero(), (m, n, r.defining_polynomial)
            assert r.residual <= 1e-20 and r.precision_bits >= 256
            found.append(f"X{m}/X{n} k={r.approx:.7f}")
        info["detail"] = ", ".join(found)


def test_c09_x23_on_ac(cat, criterion):
    with criterion.check(9, "X23 on AC exactly") as info:
        c2 = QuadExt(F(1, 2), F(1, 2), 61)
        P = eval_center_squares(cat, 23, F(1), F(4), c2)
        assert P.v == 0
        assert P.u != 0 and P.w != 0
        info["detail"] = f"coordinates ({P.u} : {P.v} : {P.w})"


def test_c10_x18_numeric(cat, criterion):
    with criterion.check(10, "X18 degenerate examples") as info:
        with mpmath.workprec(256):
            c = mpmath.sqrt((353 + 15 * mpmath.sqrt(93)) / 2)
            dist = numeric_vertex_distance(18, (mpmath.mpf(8), mpmath.mpf(15), c), cat=cat, bits=256)
            c = 7 * mpmath.sqrt(35 * (940379 + 2 * mpmath.sqrt(10302477117)))
            ratio = numeric_sum_ratio(18, (mpmath.mpf(16513), mpmath.mpf(42189), c), cat=cat, bits=256)
        assert dist <= 1e-20 and ratio <= 1e-15
        info["detail"] = f"vertex distance {float(dist):.2e}, sum ratio {float(ratio):.2e}"


def test_c11_x30_identity(cat, criterion):
    with criterion.check(11, "X30 coordinate sum is the zero polynomial") as info:
        assert at_infinity_identity(30, cat)
        assert not at_infinity_identity(2, cat)
        info["detail"] = "u+v+w expands to 0 over Q[a,b,c]"


def test_c12_property_suites(cat, criterion):
    import random

    import test_catalog
    import test_geom
    import test_ordergraph

    with criterion.check(12, "property suites") as info:
        rng = random.Random(20)
        triangles = [test_catalog._random_sides(rng) for _ in range(20)]
        test_catalog.test_homogeneity_all_entries(cat, triangles)
        test_catalog.test_cyclic_consistency_all_entries(cat, triangles)
        test_catalog.test_median_symmetry_all_entries(cat)
        test_geom.test_cartesian_oracle_regions_and_distances(cat)
        test_ordergraph.test_reduction_preserves_reachability()
        test_ordergraph.test_cycle_raises()
        info["detail"] = "homogeneity, cyclic, median symmetry, Cartesian oracle (10^3), reachability, cycles"


@pytest.mark.slow
def test_c13_cutpoint(cat, criterion):
    with criterion.check(13, "X1 cutpoint of the isosceles Hasse diagram") as info:
        g = build_graph(OrderKind.ISOSCELES, list(range(1, 101)), cat=cat, jobs=JOBS)
        h = transitive_reduction(g)  # raises on any certified cycle
        cut = articulation_points(h)
        info["detail"] = (f"{len(h.nodes)} nodes, {len(h.edges)} covering edges, "
                          f"excluded {sorted(g.excluded)}, articulation points {sorted(cut)}")
        assert set(g.excluded) == OUTSIDE_TALL
        assert 1 in cut
