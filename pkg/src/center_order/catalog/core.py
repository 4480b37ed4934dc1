"""Center definitions, cyclic expansion and exact/numeric evaluation."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Callable, Union

import mpmath

from ..exactnum import MultiPoly, QuadExt, UniPoly
from ..geom import VERTEX_A, VERTEX_B, VERTEX_C, BaryPoint, GeometryError
from .parser import Node, ParseError, parse_center_expr, permute, symbols_used, to_source

CenterKey = Union[int, str]

CYCLE_1 = {"a": "b", "b": "c", "c": "a"}
CYCLE_2 = {"a": "c", "b": "a", "c": "b"}

REFERENCE_SIDES = (6, 9, 13)

PSEUDO_CENTERS = {"A": VERTEX_A, "B": VERTEX_B, "C": VERTEX_C}


class CatalogError(ValueError):
    pass


class UnknownCenter(CatalogError, KeyError):
    def __str__(self):
        return self.args[0] if self.args else "unknown center"


@dataclass(frozen=True)
class Sides:
    """Side lengths a = BC, b = CA, c = AB."""

    a: Fraction
    b: Fraction
    c: Fraction
    allow_degenerate: bool = False

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                object.__setattr__(self, name, Fraction(v))
        a, b, c = self.a, self.b, self.c
        if min(a, b, c) <= 0:
            raise GeometryError("side lengths must be positive")
        if not self.allow_degenerate and not (a + b > c and b + c > a and c + a > b):
            raise GeometryError(f"sides {a}, {b}, {c} violate the triangle inequality")

    @classmethod
    def parse(cls, text: str) -> Sides:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError("expected three comma-separated side lengths")
        return cls(*(Fraction(p) for p in parts))

    def scaled(self, k) -> Sides:
        k = Fraction(k)
        return Sides(self.a * k, self.b * k, self.c * k, self.allow_degenerate)

    def normalized(self) -> Sides:
        """Rescaled so that a = 1."""
        return self.scaled(1 / self.a)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    @cached_property
    def E(self) -> Fraction:
        return area_poly(self.a, self.b, self.c)

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def area_poly(a, b, c):
    """2a²b² + 2b²c² + 2c²a² - a⁴ - b⁴ - c⁴ = 16 K²."""
    a2, b2, c2 = a * a, b * b, c * c
    return 2 * a2 * b2 + 2 * b2 * c2 + 2 * c2 * a2 - a2 * a2 - b2 * b2 - c2 * c2


@dataclass(frozen=True)
class AreaContext:
    E: object
    radicand: object

    @classmethod
    def for_sides(cls, a, b, c) -> AreaContext:
        E = area_poly(a, b, c)
        return cls(E, 3 * E)

    @property
    def U(self) -> QuadExt:
        # U = sqrt(3) * K = sqrt(3 E) / 4
        return QuadExt(self.E * 0, Fraction(1, 4), self.radicand)


@dataclass(frozen=True)
class CenterDef:
    index: int
    text: str
    provenance: str = ""
    ast: Node = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.ast is None:
            object.__setattr__(self, "ast", parse_center_expr(self.text))

    @property
    def uses_U(self) -> bool:
        return "U" in symbols_used(self.ast)

    @cached_property
    def coordinate_asts(self) -> tuple[Node, Node, Node]:
        return (self.ast, permute(self.ast, CYCLE_1), permute(self.ast, CYCLE_2))

    @cached_property
    def _func(self) -> Callable:
        srcs = [to_source(n) for n in self.coordinate_asts]
        code = f"lambda a, b, c, U: ({srcs[0]}, {srcs[1]}, {srcs[2]})"
        return eval(code, {"__builtins__": {}}, {})  # noqa: S307 - generated from parsed AST

    def evaluate(self, a, b, c, U) -> tuple:
        """Three coordinates over any ring supporting +, -, *, **."""
        return self._func(a, b, c, U)


def key_of(token) -> CenterKey:
    """Normalize user input ('X20', '20', 'A') to a catalog key."""
    if isinstance(token, int):
        return token
    t = str(token).strip()
    if t.upper() in PSEUDO_CENTERS:
        return t.upper()
    if t[:1] in ("X", "x"):
        t = t[1:]
    try:
        return int(t)
    except ValueError:
        raise UnknownCenter(f"unknown center {token!r}") from None


def label(key: CenterKey) -> str:
    return f"X{key}" if isinstance(key, int) else str(key)


class Catalog:
    def __init__(self, entries: dict[int, CenterDef] | None = None, source: str = ""):
        self.entries: dict[int, CenterDef] = dict(entries or {})
        self.source = source

    def __contains__(self, key) -> bool:
        return key in self.entries or key in PSEUDO_CENTERS

    def __getitem__(self, key) -> CenterDef:
        try:
            return self.entries[key]
        except KeyError:
            raise UnknownCenter(f"center {label(key)} is not in the catalog") from None

    def __len__(self):
        return len(self.entries)

    @property
    def coverage(self) -> set[int]:
        return set(self.entries)

    def indices(self) -> list[int]:
        return sorted(self.entries)

    def add(self, entry: CenterDef) -> None:
        if entry.index in self.entries:
            raise CatalogError(f"duplicate index {entry.index}")
        self.entries[entry.index] = entry


def parse_catalog_text(text: str, source: str = "<string>", strict: bool = True):
    """Parse catalog lines; returns (catalog, errors)."""
    cat = Catalog(source=source)
    errors: list[tuple[int | None, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(";", 2)]
        if len(parts) < 2:
            errors.append((None, f"line {lineno}: expected 'n ; expression ; provenance'"))
            continue
        try:
            index = int(parts[0])
            if index <= 0:
                raise ValueError
        except ValueError:
            errors.append((None, f"line {lineno}: bad index {parts[0]!r}"))
            continue
        try:
            entry = CenterDef(index, parts[1], parts[2] if len(parts) > 2 else "")
            cat.add(entry)
        except (ParseError, CatalogError) as exc:
            errors.append((index, f"line {lineno}: {exc}"))
    if strict and errors:
        raise CatalogError("; ".join(msg for _, msg in errors))
    return cat, errors


def load_catalog(path: str | os.PathLike | None = None, strict: bool = True) -> Catalog:
    """Load a catalog file; defaults to $CENTER_ORDER_CATALOG or the shipped data."""
    if path is None:
        path = os.environ.get("CENTER_ORDER_CATALOG")
    if path is None:
        text = resources.files(__package__).joinpath("data/etc_centers.txt").read_text("utf-8")
        source = "builtin:etc_centers.txt"
    else:
        text = Path(path).read_text("utf-8")
        source = str(path)
    cat, _ = parse_catalog_text(text, source, strict=strict)
    return cat


_default: Catalog | None = None


def default_catalog() -> Catalog:
    global _default
    if _default is None:
        _default = load_catalog()
    return _default


# -- evaluation ----------------------------------------------------------------


def _pseudo(key: str, radicand) -> BaryPoint:
    P = PSEUDO_CENTERS[key]
    return BaryPoint(*(QuadExt(Fraction(t), 0, radicand) for t in P))


def eval_center(cat: Catalog, n: CenterKey, s: Sides) -> BaryPoint:
    """Exact coordinates of X_n in the triangle with sides ``s``."""
    ctx = AreaContext.for_sides(s.a, s.b, s.c)
    if n in PSEUDO_CENTERS:
        return _pseudo(n, ctx.radicand)
    entry = cat[n]
    coords = entry.evaluate(s.a, s.b, s.c, ctx.U)
    coords = [c if isinstance(c, QuadExt) else QuadExt(Fraction(c), 0, ctx.radicand) for c in coords]
    try:
        return BaryPoint(*coords)
    except GeometryError:
        raise CatalogError(f"X{n} evaluates to the zero triple at sides {s}") from None


def eval_center_squares(cat: Catalog, n: CenterKey, a2, b2, c2) -> BaryPoint:
    """Evaluate from squared side lengths (entries using only even powers).

    The squares may be QuadExt values, e.g. c² = (1 + √61)/2.
    """
    if n in PSEUDO_CENTERS:
        return PSEUDO_CENTERS[n]
    entry = cat[n]
    if entry.uses_U:
        raise CatalogError(f"X{n} uses U; evaluation from squares is not supported")
    names = {"a": "A2", "b": "B2", "c": "C2"}
    srcs = []
    for node in entry.coordinate_asts:
        srcs.append(to_source(_halve_powers(node), names))
    fn = eval(f"lambda A2, B2, C2: ({srcs[0]}, {srcs[1]}, {srcs[2]})", {"__builtins__": {}}, {})
    return BaryPoint(*fn(a2, b2, c2))


def _halve_powers(node: Node) -> Node:
    from .parser import BinOp, Neg, Num, Pow, Sym

    if isinstance(node, Pow):
        if isinstance(node.base, Sym):
            if node.exponent % 2:
                raise CatalogError("odd power of a side length")
            return Pow(node.base, node.exponent // 2)
        return Pow(_halve_powers(node.base), node.exponent)
    if isinstance(node, Sym):
        raise CatalogError("odd power of a side length")
    if isinstance(node, Num):
        return node
    if isinstance(node, Neg):
        return Neg(_halve_powers(node.operand))
    return BinOp(node.op, _halve_powers(node.left), _halve_powers(node.right))


def eval_center_family(cat: Catalog, n: CenterKey, a, b, c) -> tuple:
    """Coordinates over a polynomial ring (UniPoly or MultiPoly side values).

    Returns QuadExt values whose coefficients lie in that ring and whose
    radicand is 3E.
    """
    ctx = AreaContext.for_sides(a, b, c)
    one = a * 0 + 1
    zero = a * 0
    if n in PSEUDO_CENTERS:
        return tuple(QuadExt(one * t, zero, ctx.radicand) for t in PSEUDO_CENTERS[n])
    coords = cat[n].evaluate(a, b, c, ctx.U)
    return tuple(
        x if isinstance(x, QuadExt) else QuadExt(x, zero, ctx.radicand) for x in coords
    )


def iso_family_coords(cat: Catalog, n: CenterKey) -> tuple:
    """Coordinates on the isosceles family (1, k, k) as QuadExt over Q[k]."""
    k = UniPoly.x()
    return eval_center_family(cat, n, UniPoly.const(1), k, k)


def symbolic_coords(cat: Catalog, n: CenterKey) -> tuple:
    """Coordinates as QuadExt over Q[a, b, c]."""
    a, b, c = (MultiPoly.var(3, i) for i in range(3))
    return eval_center_family(cat, n, a, b, c)


def eval_center_numeric(cat: Catalog, n: CenterKey, sides, precision_bits: int = 256) -> tuple:
    """High-precision floating evaluation (sides may be irrational)."""
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    if isinstance(sides, Sides):
        sides = (sides.a, sides.b, sides.c)
    with mpmath.workprec(precision_bits):
        a, b, c = (mpmath.mpf(x) if not isinstance(x, Fraction) else mpmath.mpf(x.numerator) / x.denominator for x in sides)
        if not (a + b > c and b + c > a and c + a > b) or min(a, b, c) <= 0:
            raise GeometryError("numerically degenerate triangle")
        E = area_poly(a, b, c)
        if E <= 0:
            raise GeometryError("numerically degenerate triangle")
        if n in PSEUDO_CENTERS:
            return tuple(mpmath.mpf(t) for t in PSEUDO_CENTERS[n])
        U = mpmath.sqrt(3) * mpmath.sqrt(E) / 4
        return tuple(+v for v in cat[n].evaluate(a, b, c, U))


# -- validation ----------------------------------------------------------------


@dataclass
class ValidationReport:
    checked: int = 0
    failures: list[tuple[int | None, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "checked": self.checked,
            "ok": self.ok,
            "failures": [{"index": i, "message": m} for i, m in self.failures],
        }


def _proportional(P: BaryPoint, Q: BaryPoint) -> bool:
    from ..geom import same_point

    return same_point(P, Q)


def validate_entries(cat: Catalog, report: ValidationReport | None = None) -> ValidationReport:
    report = report or ValidationReport()
    ref = Sides(*REFERENCE_SIDES)
    scaled = ref.scaled(Fraction(7, 3))
    for n in cat.indices():
        report.checked += 1
        try:
            P = eval_center(cat, n, ref)
        except CatalogError as exc:
            report.failures.append((n, str(exc)))
            continue
        except Exception as exc:  # radicand mismatch, arithmetic errors
            report.failures.append((n, f"evaluation failed: {exc}"))
            continue
        try:
            # scaling sides by k scales U by k², which keeps the radicand fixed
            k = scaled.a / ref.a
            U = AreaContext.for_sides(ref.a, ref.b, ref.c).U * (k * k)
            Q = BaryPoint(*cat[n].evaluate(scaled.a, scaled.b, scaled.c, U))
            if not _proportional(P, Q):
                report.failures.append((n, "not homogeneous (U must pair with degree-2 terms)"))
        except Exception as exc:
            report.failures.append((n, f"homogeneity check failed: {exc}"))
    return report


def validate_catalog(cat_or_path) -> ValidationReport:
    """Parse + evaluate every entry; failures are collected, never raised."""
    report = ValidationReport()
    if isinstance(cat_or_path, Catalog):
        cat = cat_or_path
    else:
        text = Path(cat_or_path).read_text("utf-8")
        cat, errors = parse_catalog_text(text, str(cat_or_path), strict=False)
        report.failures.extend(errors)
        report.checked += len(errors)
    return validate_entries(cat, report)
