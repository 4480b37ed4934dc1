"""Verdict engine: pairwise order comparisons, region classifications, coincidences."""

from __future__ import annotations

from ..catalog import Catalog, default_catalog
from ..families import ISOSCELES_ALL, TALL_ISOSCELES, SamplePlan, TriangleFamily
from .identities import at_infinity_check, at_infinity_identity, numeric_sum_ratio, numeric_vertex_distance
from .iso import (
    at_infinity_iso,
    classify_outside_angle_A_iso,
    compare_iso,
    coincides_with_vertex_A_iso,
    find_coincidence_iso,
)
from .planar import (
    SubdivisionBudget,
    classify_above_BC,
    classify_outside_angle_A_planar,
    classify_trace_right_of_C,
    compare_2d,
    default_family,
)
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


def compare(kind: OrderKind, m, n, plan: SamplePlan | None = None, cat: Catalog | None = None,
            budget: SubdivisionBudget | None = None, certify: bool = True,
            family: TriangleFamily | None = None) -> Verdict:
    """Dispatch to the certified 1-parameter or the sampling 2-parameter engine."""
    if kind is OrderKind.ISOSCELES:
        if m == n:
            return Verdict(kind, m, n, VerdictKind.EQUAL, note="reflexive: a center is never strictly before itself")
        return compare_iso(m, n, cat, family or TALL_ISOSCELES)
    return compare_2d(kind, m, n, plan, cat, family, budget, certify)


def classify_outside_angle_A(n, family: TriangleFamily = ISOSCELES_ALL, plan: SamplePlan | None = None,
                             cat: Catalog | None = None) -> RegionVerdict:
    if family.is_isosceles:
        return classify_outside_angle_A_iso(n, family, cat)
    return classify_outside_angle_A_planar(n, family, plan, cat)


def coincides_with_vertex_A(n, family: TriangleFamily = ISOSCELES_ALL, plan: SamplePlan | None = None,
                            cat: Catalog | None = None) -> RegionVerdict:
    """Exact on the isosceles families; a symbolic identity test plus sampling otherwise."""
    cat = cat or default_catalog()
    if family.is_isosceles:
        return coincides_with_vertex_A_iso(n, family, cat)
    from ..catalog import eval_center, symbolic_coords
    from ..exactnum import quad_sign
    from ..families import pair_key, sample

    pred = "at-vertex-a"
    _, v, w = symbolic_coords(cat, n)
    if not (v.rat or v.rad) and not (w.rat or w.rad):
        return RegionVerdict(pred, n, family.name, RegionKind.IDENTICALLY_AT_A, certificate={"method": "identity"})
    samples = sample(family, plan or SamplePlan(), key=pair_key(pred, n))
    hits = []
    for s in samples:
        P = eval_center(cat, n, s)
        if quad_sign(P.v) == 0 and quad_sign(P.w) == 0:
            hits.append(s)
    if hits:
        return RegionVerdict(pred, n, family.name, RegionKind.SOMETIMES, witness_in=hits[0],
                             samples_tested=len(samples))
    return RegionVerdict(pred, n, family.name, RegionKind.NEVER, samples_tested=len(samples),
                         note="no sample at vertex A")


__all__ = [
    "CoincidenceRoot",
    "IdenticallyEqual",
    "NotComparable",
    "OrderKind",
    "RegionKind",
    "RegionVerdict",
    "SubdivisionBudget",
    "Verdict",
    "VerdictKind",
    "at_infinity_check",
    "at_infinity_identity",
    "at_infinity_iso",
    "classify_above_BC",
    "classify_outside_angle_A",
    "classify_outside_angle_A_iso",
    "classify_outside_angle_A_planar",
    "classify_trace_right_of_C",
    "coincides_with_vertex_A",
    "compare",
    "compare_2d",
    "compare_iso",
    "default_family",
    "find_coincidence_iso",
    "numeric_sum_ratio",
    "numeric_vertex_distance",
]
