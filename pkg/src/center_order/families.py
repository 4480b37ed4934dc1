"""Triangle families (normalized to a = 1) and deterministic exact samplers."""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .catalog import Sides
from .exactnum import UniPoly


class FamilyKind(enum.Enum):
    TALL_ISOSCELES = "TallIsosceles"
    ISOSCELES_ALL = "IsoscelesAll"
    ACUTE_MIN_A = "AcuteMinA"
    ACUTE_SCALENE = "AcuteScalene"


_DESCRIPTIONS = {
    FamilyKind.TALL_ISOSCELES: "isosceles (1, k, k) with k > 1",
    FamilyKind.ISOSCELES_ALL: "isosceles (1, k, k) with k > 1/2",
    FamilyKind.ACUTE_MIN_A: "acute triangles with a = 1 < b and a < c",
    FamilyKind.ACUTE_SCALENE: "acute triangles with 1 = a < b < c",
}

_ALIASES = {
    "tall": FamilyKind.TALL_ISOSCELES,
    "tall-isosceles": FamilyKind.TALL_ISOSCELES,
    "tallisosceles": FamilyKind.TALL_ISOSCELES,
    "isosceles": FamilyKind.ISOSCELES_ALL,
    "isosceles-all": FamilyKind.ISOSCELES_ALL,
    "isoscelesall": FamilyKind.ISOSCELES_ALL,
    "acute": FamilyKind.ACUTE_MIN_A,
    "acute-min-a": FamilyKind.ACUTE_MIN_A,
    "acutemina": FamilyKind.ACUTE_MIN_A,
    "scalene": FamilyKind.ACUTE_SCALENE,
    "acute-scalene": FamilyKind.ACUTE_SCALENE,
    "acutescalene": FamilyKind.ACUTE_SCALENE,
}


@dataclass(frozen=True)
class TriangleFamily:
    kind: FamilyKind

    @classmethod
    def parse(cls, name: str) -> TriangleFamily:
        try:
            return cls(FamilyKind(name))
        except ValueError:
            pass
        key = name.strip().lower().replace("_", "-")
        if key not in _ALIASES:
            raise ValueError(f"unknown family {name!r}")
        return cls(_ALIASES[key])

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def description(self) -> str:
        return _DESCRIPTIONS[self.kind]

    @property
    def is_isosceles(self) -> bool:
        return self.kind in (FamilyKind.TALL_ISOSCELES, FamilyKind.ISOSCELES_ALL)

    @property
    def k_lower(self) -> Fraction:
        """Open lower bound of the leg parameter k for isosceles families."""
        if self.kind is FamilyKind.TALL_ISOSCELES:
            return Fraction(1)
        if self.kind is FamilyKind.ISOSCELES_ALL:
            return Fraction(1, 2)
        raise ValueError(f"{self.name} is not a one-parameter family")

    def __str__(self):
        return self.name


TALL_ISOSCELES = TriangleFamily(FamilyKind.TALL_ISOSCELES)
ISOSCELES_ALL = TriangleFamily(FamilyKind.ISOSCELES_ALL)
ACUTE_MIN_A = TriangleFamily(FamilyKind.ACUTE_MIN_A)
ACUTE_SCALENE = TriangleFamily(FamilyKind.ACUTE_SCALENE)


@dataclass(frozen=True)
class SamplePlan:
    """Sampling parameters.

    ``box_hi`` bounds b, c (or k) for the grid and most random draws;
    ``tail_fraction`` of the random draws go to long thin triangles with
    b, c up to ``tail_hi`` and ``edge_fraction`` hug the family boundary.
    """

    grid_density: int = 40
    random_count: int = 10_000
    rng_seed: int = 0
    denominator_bound: int = 1000
    box_hi: Fraction = Fraction(4)
    tail_hi: Fraction = Fraction(64)
    tail_fraction: float = 0.05
    edge_fraction: float = 0.15

    def __post_init__(self):
        if self.grid_density < 0 or self.random_count < 0:
            raise ValueError("sample counts must be nonnegative")
        if self.denominator_bound < 1:
            raise ValueError("denominator bound must be positive")
        if not 0 <= self.tail_fraction + self.edge_fraction <= 1:
            raise ValueError("tail and edge fractions must sum to at most 1")
        object.__setattr__(self, "box_hi", Fraction(self.box_hi))
        object.__setattr__(self, "tail_hi", Fraction(self.tail_hi))

    def to_dict(self) -> dict:
        return {
            "grid_density": self.grid_density,
            "random_count": self.random_count,
            "rng_seed": self.rng_seed,
            "denominator_bound": self.denominator_bound,
            "box_hi": str(self.box_hi),
            "tail_hi": str(self.tail_hi),
            "tail_fraction": self.tail_fraction,
            "edge_fraction": self.edge_fraction,
        }


def contains(f: TriangleFamily, s: Sides) -> bool:
    """Exact membership test (sides are first rescaled to a = 1)."""
    a, b, c = s.a, s.b, s.c
    if min(a, b, c) <= 0:
        return False
    b, c = b / a, c / a
    if f.is_isosceles:
        return b == c and b > f.k_lower
    a2, b2, c2 = 1, b * b, c * c
    acute = b2 < a2 + c2 and c2 < a2 + b2 and a2 < b2 + c2
    if not (acute and 1 < b and 1 < c):
        return False
    if f.kind is FamilyKind.ACUTE_SCALENE:
        return b < c
    return True


def iso_sides(k) -> Sides:
    k = Fraction(k)
    return Sides(Fraction(1), k, k)


def iso_specialize(k_expr=None) -> dict:
    """Substitution map a -> 1, b -> k, c -> k (k a UniPoly by default)."""
    k = UniPoly.x() if k_expr is None else k_expr
    return {"a": UniPoly.const(1) if isinstance(k, UniPoly) else 1, "b": k, "c": k}


# -- sampling ------------------------------------------------------------------


def _round_rational(x: float, q: int) -> Fraction:
    return Fraction(round(x * q), q)


def _random_rational(rng: random.Random, lo: float, hi: float, bound: int) -> Fraction:
    q = rng.randint(1, bound)
    return _round_rational(rng.uniform(lo, hi), q)


def _iso_grid(f: TriangleFamily, plan: SamplePlan) -> list[Fraction]:
    lo, hi = f.k_lower, plan.box_hi
    g = plan.grid_density
    return [lo + (hi - lo) * i / (g + 1) for i in range(1, g + 1)]


def _acute_c_range(b: float) -> tuple[float, float]:
    return max(1.0, math.sqrt(max(b * b - 1, 0.0))), math.sqrt(b * b + 1)


def _draw_acute(f: TriangleFamily, rng: random.Random, plan: SamplePlan, mode: str):
    bound = plan.denominator_bound
    box = float(plan.box_hi)
    if mode == "tail":
        b = math.exp(rng.uniform(math.log(box), math.log(float(plan.tail_hi))))
    else:
        b = rng.uniform(1.0, box)
    clo, chi = _acute_c_range(b)
    if mode == "edge":
        # hug one of the boundary pieces: b = 1, c = 1, right angle at B or C, b = c
        which = rng.randrange(5)
        eps = 10 ** rng.uniform(-4, -1)
        if which == 0:
            b = 1 + eps * rng.random()
            clo, chi = _acute_c_range(b)
            c = rng.uniform(clo, chi)
        elif which == 1:
            c = chi - eps * (chi - clo) * rng.random()
        elif which == 2:
            c = clo + eps * (chi - clo) * rng.random()
        elif which == 3:
            c = b + eps * rng.uniform(-1, 1)
        else:
            b = 1 + eps * rng.random()
            c = 1 + eps * rng.random()
    else:
        c = rng.uniform(clo, chi)
    q = rng.randint(1, bound)
    if mode == "edge":
        q = max(q, bound)
    return _round_rational(b, q), _round_rational(c, rng.randint(max(1, q // 2), bound))


def _member_bc(f: TriangleFamily, b: Fraction, c: Fraction) -> bool:
    """contains() for a = 1, using integer arithmetic only."""
    if f.is_isosceles:
        return b == c and b > f.k_lower
    bn, bd = b.numerator, b.denominator
    cn, cd = c.numerator, c.denominator
    if bn <= bd or cn <= cd:
        return False
    b2 = bn * bn * cd * cd
    c2 = cn * cn * bd * bd
    one = bd * bd * cd * cd
    if not (b2 < one + c2 and c2 < one + b2):
        return False
    if f.kind is FamilyKind.ACUTE_SCALENE:
        return bn * cd < cn * bd
    return True


def sample(f: TriangleFamily, plan: SamplePlan, rng: random.Random | None = None,
           key: str | None = None) -> list[Sides]:
    """Deterministic list of member triangles (grid first, then random draws).

    With ``key`` the generator is seeded from (plan.rng_seed, key) and the
    result is memoized.
    """
    if rng is None:
        return list(_sample_cached(f, plan, key))
    return _sample(f, plan, rng)


@lru_cache(maxsize=64)
def _sample_cached(f: TriangleFamily, plan: SamplePlan, key: str | None) -> tuple:
    seed = plan.rng_seed if key is None else f"{plan.rng_seed}:{key}"
    return tuple(_sample(f, plan, random.Random(seed)))


def _sample(f: TriangleFamily, plan: SamplePlan, rng: random.Random) -> list[Sides]:
    if plan.grid_density == 0 and plan.random_count == 0:
        raise ValueError("plan produces no samples")
    out: list[Sides] = []
    seen: set = set()
    one = Fraction(1)

    def push(b: Fraction, c: Fraction):
        key = (b, c)
        if key not in seen and _member_bc(f, b, c):
            seen.add(key)
            out.append(Sides(one, b, c))

    if f.is_isosceles:
        for k in _iso_grid(f, plan):
            push(k, k)
        lo = float(f.k_lower)
        n_tail = int(plan.random_count * plan.tail_fraction)
        n_edge = int(plan.random_count * plan.edge_fraction)
        for i in range(plan.random_count):
            if i < n_tail:
                k = math.exp(rng.uniform(math.log(float(plan.box_hi)), math.log(float(plan.tail_hi))))
                kq = _round_rational(k, rng.randint(1, plan.denominator_bound))
            elif i < n_tail + n_edge:
                kq = _round_rational(lo + 10 ** rng.uniform(-5, -1), plan.denominator_bound * 10)
            else:
                kq = _random_rational(rng, lo, float(plan.box_hi), plan.denominator_bound)
            if kq > f.k_lower:
                push(kq, kq)
        return out

    g = plan.grid_density
    hi = plan.box_hi
    for i in range(1, g + 1):
        b = 1 + (hi - 1) * i / (g + 1)
        for j in range(1, g + 1):
            c = 1 + (hi - 1) * j / (g + 1)
            push(Fraction(b), Fraction(c))
    n_tail = int(plan.random_count * plan.tail_fraction)
    n_edge = int(plan.random_count * plan.edge_fraction)
    attempts = 0
    target = len(out) + plan.random_count
    i = 0
    while len(out) < target and attempts < 20 * plan.random_count + 100:
        attempts += 1
        mode = "tail" if i < n_tail else ("edge" if i < n_tail + n_edge else "box")
        b, c = _draw_acute(f, rng, plan, mode)
        if f.kind is FamilyKind.ACUTE_SCALENE and b > c:
            b, c = c, b
        before = len(out)
        if b > 0 and c > 0:
            push(Fraction(b), Fraction(c))
        if len(out) > before:
            i += 1
    return out


def pair_key(*parts) -> str:
    """Sampling key for a pair or predicate so that runs are order independent."""
    return ":".join(str(p) for p in parts)


def pair_rng(seed: int, m, n) -> random.Random:
    """Per-pair generator so that pairs can run in any order or in parallel."""
    return random.Random(f"{seed}:{m}:{n}")
