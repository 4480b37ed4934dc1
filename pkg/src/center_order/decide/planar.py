"""Decisions over the two-parameter acute families (a = 1, parameters b, c).

Phase 1 evaluates the comparison quantity at every sample triangle.  The
interval kernel settles most signs rigorously; any sample whose enclosure
straddles zero is re-evaluated in exact arithmetic, so every reported sign
is exact.  Phase 2 optionally tries to certify a direction by adaptive
subdivision of the (b, c) box.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .. import kernel
from ..catalog import PSEUDO_CENTERS, Catalog, CatalogError, Sides, area_poly, default_catalog, eval_center, label
from ..exactnum import quad_sign
from ..families import ACUTE_MIN_A, ACUTE_SCALENE, FamilyKind, SamplePlan, TriangleFamily, pair_key, sample
from ..kernel import Builder, Reg
from .quantities import (
    above_quantity,
    inside_angle_quantities,
    order_denominators,
    order_quantity,
    trace_right_quantity,
)
from .verdicts import OrderKind, RegionKind, RegionVerdict, Verdict, VerdictKind


@dataclass(frozen=True)
class SubdivisionBudget:
    max_depth: int = 12
    max_boxes: int = 400_000
    box_hi: Fraction = Fraction(4)

    def to_dict(self) -> dict:
        return {"max_depth": self.max_depth, "max_boxes": self.max_boxes, "box_hi": str(self.box_hi)}


def default_family(kind: OrderKind) -> TriangleFamily:
    return ACUTE_SCALENE if kind is OrderKind.TRACE else ACUTE_MIN_A


# -- program construction ------------------------------------------------------


def _ring_inputs(builder: Builder):
    a, b, c = builder.inputs
    U = (3 * area_poly(a, b, c)).sqrt() * Fraction(1, 4)
    return a, b, c, U


def _center_regs(builder: Builder, cat: Catalog, n, a, b, c, U) -> tuple:
    if n in PSEUDO_CENTERS:
        return tuple(builder.const(t) for t in PSEUDO_CENTERS[n])
    return tuple(x if isinstance(x, Reg) else builder.const(x) for x in cat[n].evaluate(a, b, c, U))


def _as_reg(builder: Builder, x) -> Reg:
    return x if isinstance(x, Reg) else builder.const(x)


def family_constraints(family: TriangleFamily, a, b, c) -> list:
    """Quantities that are all strictly positive exactly on the family."""
    g = [b - a, c - a, a * a + c * c - b * b, a * a + b * b - c * c, b * b + c * c - a * a]
    if family.kind is FamilyKind.ACUTE_SCALENE:
        g.append(c - b)
    return g


@lru_cache(maxsize=4096)
def order_program(cat: Catalog, kind: OrderKind, m, n, family: TriangleFamily):
    """Outputs: [D, den(P), den(Q), constraints...]."""
    bld = Builder(3)
    a, b, c, U = _ring_inputs(bld)
    P = _center_regs(bld, cat, m, a, b, c, U)
    Q = _center_regs(bld, cat, n, a, b, c, U)
    outs = [order_quantity(kind, P, Q, a, b, c)]
    outs += order_denominators(kind, P) + order_denominators(kind, Q)
    outs += family_constraints(family, a, b, c)
    return bld.build([_as_reg(bld, x) for x in outs])


@lru_cache(maxsize=4096)
def region_program(cat: Catalog, predicate: str, n):
    bld = Builder(3)
    a, b, c, U = _ring_inputs(bld)
    P = _center_regs(bld, cat, n, a, b, c, U)
    s = P[0] + P[1] + P[2]
    if predicate == "above-bc":
        outs = [above_quantity(P), s]
    elif predicate == "outside-angle-a":
        outs = [*inside_angle_quantities(P), s]
    elif predicate == "trace-right-of-c":
        outs = [trace_right_quantity(P), P[1] + P[2]]
    else:
        raise ValueError(f"unknown predicate {predicate!r}")
    return bld.build([_as_reg(bld, x) for x in outs])


# -- sample handling -------------------------------------------------------------


def _enclose(x: Fraction) -> tuple[float, float]:
    f = float(x)
    if Fraction(f) == x:
        return f, f
    return float(np.nextafter(f, -np.inf)), float(np.nextafter(f, np.inf))


def _is_exact_double(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0 and abs(x.numerator) < 2**53 and d < 2**1000


def sides_to_boxes(samples: list[Sides]) -> tuple[np.ndarray, np.ndarray]:
    vals = [v for s in samples for v in (s.a, s.b, s.c)]
    mid = np.array([float(v) for v in vals]).reshape(-1, 3)
    exact = np.array([_is_exact_double(v) for v in vals], dtype=bool).reshape(-1, 3)
    lo = np.where(exact, mid, np.nextafter(mid, -np.inf))
    hi = np.where(exact, mid, np.nextafter(mid, np.inf))
    return lo, hi


def _exact_point(cat: Catalog, n, s: Sides):
    try:
        return tuple(eval_center(cat, n, s))
    except CatalogError:
        return None


def exact_order_sign(cat: Catalog, kind: OrderKind, m, n, s: Sides) -> int | None:
    """Exact sign of D at one triangle, or None where the quantity is undefined."""
    P = _exact_point(cat, m, s)
    Q = _exact_point(cat, n, s)
    if P is None or Q is None:
        return None
    for d in order_denominators(kind, P) + order_denominators(kind, Q):
        if quad_sign(d) == 0:
            return None
    return quad_sign(order_quantity(kind, P, Q, s.a, s.b, s.c))


@dataclass
class SampleTally:
    signs: list = field(default_factory=list)  # per-sample sign or None
    exact_rechecks: int = 0

    def count(self, value) -> int:
        return sum(1 for s in self.signs if s == value)

    def first(self, value) -> int | None:
        for i, s in enumerate(self.signs):
            if s == value:
                return i
        return None


@lru_cache(maxsize=16)
def _shared_boxes(family: TriangleFamily, plan: SamplePlan, key: str):
    return sides_to_boxes(sample(family, plan, key=key))


def order_signs(cat: Catalog, kind: OrderKind, m, n, samples: list[Sides], family: TriangleFamily,
                exact: bool = False, boxes=None) -> SampleTally:
    tally = SampleTally()
    if exact:
        tally.signs = [exact_order_sign(cat, kind, m, n, s) for s in samples]
        tally.exact_rechecks = len(samples)
        return tally
    prog = order_program(cat, kind, m, n, family)
    lo, hi = kernel.run(prog, *(boxes or sides_to_boxes(samples)))
    sD = kernel.interval_signs(lo[:, 0], hi[:, 0])
    dens_ok = np.all((lo[:, 1:3] > 0) | (hi[:, 1:3] < 0), axis=1)
    signs: list = []
    for i, s in enumerate(samples):
        if sD[i] != 0 and dens_ok[i]:
            signs.append(int(sD[i]))
        else:
            tally.exact_rechecks += 1
            signs.append(exact_order_sign(cat, kind, m, n, s))
    tally.signs = signs
    return tally


# -- subdivision -----------------------------------------------------------------------


def subdivide_certify(prog, target_sign: int, n_constraints: int, budget: SubdivisionBudget,
                      n_dens: int = 2) -> dict:
    """Adaptive quadtree over (b, c) in (1, box_hi)²; a is fixed to 1.

    A leaf is certified when the enclosure of D has the target strict sign
    and all denominators exclude zero; leaves certified to lie outside the
    family are dropped.  Returns area statistics.
    """
    hi_edge = float(budget.box_hi)
    boxes = np.array([[1.0, hi_edge, 1.0, hi_edge]])
    certified = undetermined = refuted = 0.0
    evaluated = 0
    depth_reached = 0
    gstart = 1 + n_dens
    for depth in range(budget.max_depth + 1):
        if len(boxes) == 0:
            break
        depth_reached = depth
        evaluated += len(boxes)
        lo_in = np.column_stack([np.ones(len(boxes)), boxes[:, 0], boxes[:, 2]])
        hi_in = np.column_stack([np.ones(len(boxes)), boxes[:, 1], boxes[:, 3]])
        lo, hi = kernel.run(prog, lo_in, hi_in)
        g_lo = lo[:, gstart:gstart + n_constraints]
        g_hi = hi[:, gstart:gstart + n_constraints]
        outside = np.any(g_hi <= 0, axis=1)
        inside = np.all(g_lo > 0, axis=1)
        dens_ok = np.all((lo[:, 1:gstart] > 0) | (hi[:, 1:gstart] < 0), axis=1)
        if target_sign < 0:
            good = (hi[:, 0] < 0) & dens_ok
            bad = (lo[:, 0] > 0) & dens_ok & inside
        else:
            good = (lo[:, 0] > 0) & dens_ok
            bad = (hi[:, 0] < 0) & dens_ok & inside
        area = (boxes[:, 1] - boxes[:, 0]) * (boxes[:, 3] - boxes[:, 2])
        certified += float(area[good & ~outside].sum())
        refuted += float(area[bad & ~outside].sum())
        rest = ~(outside | good | bad)
        if depth == budget.max_depth or evaluated + 4 * int(rest.sum()) > budget.max_boxes:
            undetermined += float(area[rest].sum())
            break
        todo = boxes[rest]
        bm = (todo[:, 0] + todo[:, 1]) / 2
        cm = (todo[:, 2] + todo[:, 3]) / 2
        boxes = np.concatenate([
            np.column_stack([todo[:, 0], bm, todo[:, 2], cm]),
            np.column_stack([bm, todo[:, 1], todo[:, 2], cm]),
            np.column_stack([todo[:, 0], bm, cm, todo[:, 3]]),
            np.column_stack([bm, todo[:, 1], cm, todo[:, 3]]),
        ])
    total = certified + undetermined + refuted
    return {
        "method": "interval-subdivision",
        "budget": budget.to_dict(),
        "depth_reached": depth_reached,
        "boxes_evaluated": evaluated,
        "certified_area": certified,
        "undetermined_area": undetermined,
        "refuted_area": refuted,
        "success_rate": certified / total if total else 0.0,
        "complete": undetermined == 0 and refuted == 0,
        "note": "box-restricted; the family is unbounded along b = c",
    }


def compare_2d(kind: OrderKind, m, n, plan: SamplePlan | None = None, cat: Catalog | None = None,
               family: TriangleFamily | None = None, budget: SubdivisionBudget | None = None,
               certify: bool = True, exact: bool = False, sample_key: str | None = None) -> Verdict:
    """Sampling verdict with optional subdivision statistics.

    Samples are drawn per pair unless ``sample_key`` names a shared set.
    """
    cat = cat or default_catalog()
    plan = plan or SamplePlan()
    family = family or default_family(kind)
    if m == n:
        return Verdict(kind, m, n, VerdictKind.EQUAL, note="reflexive: a center is never strictly before itself")
    key = sample_key or pair_key(*sorted((label(m), label(n))))
    samples = sample(family, plan, key=key)
    boxes = _shared_boxes(family, plan, key) if sample_key else None
    tally = order_signs(cat, kind, m, n, samples, family, exact=exact, boxes=boxes)
    n_prec, n_succ = tally.count(-1), tally.count(1)
    n_eq, n_undef = tally.count(0), tally.count(None)
    stats = {
        "precedes": n_prec,
        "succeeds": n_succ,
        "equal": n_eq,
        "undefined": n_undef,
        "exact_rechecks": tally.exact_rechecks,
        "backend": "exact" if exact else kernel.BACKEND,
        "family": family.name,
    }
    if n_prec and n_succ:
        return Verdict(kind, m, n, VerdictKind.MIXED, witness_precede=samples[tally.first(-1)],
                       witness_succeed=samples[tally.first(1)], samples_tested=len(samples), stats=stats)
    if n_undef and not (n_prec or n_succ):
        return Verdict(kind, m, n, VerdictKind.DEGENERATE, samples_tested=len(samples), stats=stats,
                       note="comparison quantity undefined at every sample")
    direction = "precedes" if n_prec else "succeeds"
    note = ""
    if n_eq:
        note = f"equal at {n_eq} samples; no strict direction"
        direction = None
    elif n_undef:
        note = f"undefined at {n_undef} samples (at infinity or trace undefined)"
    certificate = None
    if certify and direction is not None and not n_undef:
        prog = order_program(cat, kind, m, n, family)
        n_g = len(family_constraints(family, 1, 1, 1))
        certificate = subdivide_certify(prog, -1 if direction == "precedes" else 1, n_g, budget or SubdivisionBudget())
    return Verdict(kind, m, n, VerdictKind.UNDETERMINED, certificate=certificate, direction=direction,
                   samples_tested=len(samples), stats=stats, note=note)


# -- region classifications -------------------------------------------------------


def _exact_region_signs(cat, predicate, n, s: Sides):
    P = _exact_point(cat, n, s)
    if P is None:
        return None
    tot = P[0] + P[1] + P[2]
    if predicate == "above-bc":
        return quad_sign(above_quantity(P)), quad_sign(tot)
    if predicate == "outside-angle-a":
        v, w = inside_angle_quantities(P)
        return quad_sign(v), quad_sign(w), quad_sign(tot)
    return quad_sign(trace_right_quantity(P)), quad_sign(P[1] + P[2])


def region_signs(cat, predicate, n, samples, exact=False) -> list:
    if exact:
        return [_exact_region_signs(cat, predicate, n, s) for s in samples]
    prog = region_program(cat, predicate, n)
    lo, hi = kernel.run(prog, *sides_to_boxes(samples))
    sg = kernel.interval_signs(lo, hi)
    out = []
    for i, s in enumerate(samples):
        row = sg[i]
        if np.all(row != 0):
            out.append(tuple(int(x) for x in row))
        else:
            out.append(_exact_region_signs(cat, predicate, n, s))
    return out


def _symbolically_at_infinity(cat, n) -> bool:
    from .identities import at_infinity_identity

    return n not in PSEUDO_CENTERS and at_infinity_identity(n, cat)


def classify_above_BC(n, family: TriangleFamily = ACUTE_MIN_A, plan: SamplePlan | None = None,
                      cat: Catalog | None = None, exact: bool = False) -> RegionVerdict:
    cat = cat or default_catalog()
    plan = plan or SamplePlan()
    pred = "above-bc"
    if _symbolically_at_infinity(cat, n):
        return RegionVerdict(pred, n, family.name, RegionKind.AT_INFINITY, certificate={"method": "identity"})
    samples = sample(family, plan, key=pair_key(pred, label(n)))
    signs = region_signs(cat, pred, n, samples, exact)
    above = [i for i, x in enumerate(signs) if x is not None and x[0] > 0]
    below = [i for i, x in enumerate(signs) if x is not None and x[0] < 0]
    on = [i for i, x in enumerate(signs) if x is not None and x[0] == 0 and x[1] != 0]
    at_inf = [i for i, x in enumerate(signs) if x is None or x[1] == 0]
    wi = samples[above[0]] if above else None
    wo = samples[below[0]] if below else None
    note = f"{len(at_inf)} samples at infinity or undefined" if at_inf else ""
    if above and below:
        kind = RegionKind.SOMETIMES
    elif above and on:
        kind = RegionKind.ALWAYS_ON_OR_ABOVE
        wo = samples[on[0]]
    elif above:
        kind = RegionKind.ALWAYS_ABOVE
    elif below:
        kind = RegionKind.ALWAYS_BELOW
    else:
        kind = RegionKind.DEGENERATE
    return RegionVerdict(pred, n, family.name, kind, witness_in=wi, witness_out=wo,
                         samples_tested=len(samples), note=note)


def classify_trace_right_of_C(n, family: TriangleFamily = ACUTE_SCALENE, plan: SamplePlan | None = None,
                              cat: Catalog | None = None, exact: bool = False,
                              extra: list[Sides] | None = None) -> RegionVerdict:
    cat = cat or default_catalog()
    plan = plan or SamplePlan()
    pred = "trace-right-of-c"
    samples = list(extra or []) + sample(family, plan, key=pair_key(pred, label(n)))
    signs = region_signs(cat, pred, n, samples, exact)
    right = [i for i, x in enumerate(signs) if x is not None and x[1] != 0 and x[0] < 0]
    other = [i for i, x in enumerate(signs) if x is not None and x[1] != 0 and x[0] >= 0]
    if right:
        return RegionVerdict(pred, n, family.name, RegionKind.SOMETIMES, witness_out=samples[right[0]],
                             witness_in=samples[other[0]] if other else None, samples_tested=len(samples))
    return RegionVerdict(pred, n, family.name, RegionKind.NEVER, witness_in=samples[other[0]] if other else None,
                         samples_tested=len(samples), note="no right-of-C trace found under the search budget")


def classify_outside_angle_A_planar(n, family: TriangleFamily = ACUTE_MIN_A, plan: SamplePlan | None = None,
                                    cat: Catalog | None = None, exact: bool = False) -> RegionVerdict:
    cat = cat or default_catalog()
    plan = plan or SamplePlan()
    pred = "outside-angle-a"
    samples = sample(family, plan, key=pair_key(pred, label(n)))
    signs = region_signs(cat, pred, n, samples, exact)
    out_idx = [i for i, x in enumerate(signs) if x is None or x[0] * x[2] <= 0 or x[1] * x[2] <= 0]
    in_idx = [i for i, x in enumerate(signs) if x is not None and x[0] * x[2] > 0 and x[1] * x[2] > 0]
    if out_idx:
        kind = RegionKind.SOMETIMES if in_idx else RegionKind.ALWAYS
        return RegionVerdict(pred, n, family.name, kind, witness_out=samples[out_idx[0]],
                             witness_in=samples[in_idx[0]] if in_idx else None, samples_tested=len(samples))
    return RegionVerdict(pred, n, family.name, RegionKind.NEVER, witness_in=samples[in_idx[0]] if in_idx else None,
                         samples_tested=len(samples))
