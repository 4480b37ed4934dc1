"""Command-line entry point.

Exit codes: 0 decided, 2 undetermined, 64 usage or input error, 70 soundness alarm.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from . import ordergraph
from .catalog import (
    Catalog,
    CatalogError,
    Sides,
    default_catalog,
    eval_center,
    eval_center_numeric,
    eval_center_squares,
    key_of,
    label,
    load_catalog,
    validate_catalog,
)
from .decide import (
    IdenticallyEqual,
    NotComparable,
    OrderKind,
    RegionKind,
    SubdivisionBudget,
    VerdictKind,
    classify_above_BC,
    classify_outside_angle_A,
    classify_trace_right_of_C,
    coincides_with_vertex_A,
    compare,
    default_family,
    find_coincidence_iso,
)
from .exactnum import QuadExt
from .families import ACUTE_MIN_A, ACUTE_SCALENE, ISOSCELES_ALL, TALL_ISOSCELES, SamplePlan, TriangleFamily
from .geom import AT_INFINITY, GeometryError, above_BC, normalize, region_of, signed_height_ratio

EXIT_OK = 0
EXIT_UNDETERMINED = 2
EXIT_USAGE = 64
EXIT_SOFTWARE = 70

PREDICATES = ("outside-angle-a", "above-bc", "trace-right-of-c", "at-vertex-a")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    catalog: str
    family: str | None
    grid_density: int
    random_count: int
    rng_seed: int
    denominator_bound: int
    max_depth: int
    max_boxes: int
    precision_bits: int
    jobs: int
    output: str | None
    format: str

    @classmethod
    def from_args(cls, args) -> RunConfig:
        return cls(
            catalog=args.catalog or "builtin",
            family=getattr(args, "family", None),
            grid_density=args.grid,
            random_count=args.samples,
            rng_seed=args.seed,
            denominator_bound=args.denom_bound,
            max_depth=args.depth,
            max_boxes=args.max_boxes,
            precision_bits=args.bits,
            jobs=args.jobs,
            output=getattr(args, "output", None),
            format="json" if args.json else "text",
        )

    @property
    def plan(self) -> SamplePlan:
        return SamplePlan(grid_density=self.grid_density, random_count=self.random_count, rng_seed=self.rng_seed,
                          denominator_bound=self.denominator_bound)

    @property
    def budget(self) -> SubdivisionBudget:
        return SubdivisionBudget(max_depth=self.max_depth, max_boxes=self.max_boxes)


# -- argument parsing helpers ---------------------------------------------------------


def parse_range(text: str) -> list:
    """'1..30', '1,2,5..9', 'A,B,650'."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"X?(\d+)\.\.X?(\d+)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise UsageError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(_center(part))
    if not out:
        raise UsageError("empty center range")
    return out


def _center(token: str):
    try:
        return key_of(token)
    except (CatalogError, ValueError) as e:
        raise UsageError(f"bad center {token!r}: {e}") from None


_SQRT = re.compile(r"^\s*([^+]*?)\s*\+\s*([^*]+?)\s*\*\s*sqrt\((\d+)\)\s*$")


def parse_quad(text: str):
    """A rational 'p/q' or 'x + y*sqrt(d)' with rational x, y."""
    m = _SQRT.match(text)
    try:
        if m:
            return QuadExt(Fraction(m.group(1)), Fraction(m.group(2)), Fraction(int(m.group(3))))
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse {text!r} as a rational or x + y*sqrt(d)") from None


def parse_numeric_sides(text: str, bits: int):
    import mpmath
    import sympy

    vals = []
    with mpmath.workprec(bits):
        for part in _split_top(text):
            try:
                expr = sympy.sympify(part, rational=True)
                vals.append(mpmath.mpf(sympy.N(expr, int(bits * 0.302) + 10)))
            except (sympy.SympifyError, TypeError, ValueError):
                raise UsageError(f"cannot parse side {part!r}") from None
    if len(vals) != 3:
        raise UsageError("expected three side lengths")
    return vals


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def _family(args, default: TriangleFamily) -> TriangleFamily:
    if getattr(args, "family", None):
        try:
            return TriangleFamily.parse(args.family)
        except ValueError as e:
            raise UsageError(str(e)) from None
    return default


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, default=str)


# -- commands ---------------------------------------------------------------------------


def _primitive(P) -> tuple:
    """Rational triples scaled to coprime integers; otherwise returned unchanged."""
    vals = list(P)
    rats = []
    for v in vals:
        if isinstance(v, QuadExt):
            if v.rad:
                return tuple(vals)
            v = v.rat
        rats.append(Fraction(v))
    from math import gcd, lcm

    den = lcm(*(r.denominator for r in rats))
    ints = [int(r * den) for r in rats]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if sum(ints) < 0 or (sum(ints) == 0 and next(x for x in ints if x) < 0):
        ints = [-x for x in ints]
    return tuple(ints)


def _fmt_triple(t) -> str:
    return "(" + ":".join(str(x) for x in t) + ")"


def cmd_eval(args, cfg: RunConfig, cat: Catalog) -> int:
    n = _center(args.center)
    if n not in cat:
        raise UsageError(f"center {label(n)} is not in the catalog")
    if args.squares:
        sq = [parse_quad(x) for x in _split_top(args.squares)]
        if len(sq) != 3:
            raise UsageError("expected three squared side lengths")
        P = eval_center_squares(cat, n, *sq)
        sides_text = args.squares
    elif args.sides is None:
        raise UsageError("eval needs --sides or --squares")
    else:
        try:
            s = Sides.parse(args.sides)
        except (ValueError, ZeroDivisionError):
            vals = parse_numeric_sides(args.sides, cfg.precision_bits)
            coords = eval_center_numeric(cat, n, vals, cfg.precision_bits)
            tot = sum(coords)
            doc = {"center": label(n), "sides": args.sides, "mode": "numeric", "bits": cfg.precision_bits,
                   "coordinates": [str(x) for x in coords], "sum_ratio": str(abs(tot) / max(abs(x) for x in coords))}
            print(_dump(doc) if args.json else f"{label(n)} at {args.sides}: ({' : '.join(str(x) for x in coords)})")
            return EXIT_OK
        P = eval_center(cat, n, s)
        sides_text = str(s)
    triple = _primitive(P)
    norm = normalize(P)
    doc = {"center": label(n), "sides": sides_text, "coordinates": [str(x) for x in triple]}
    if norm == AT_INFINITY:
        doc["normalized"] = AT_INFINITY
        text = f"{label(n)} {_fmt_triple(triple)} AT-INFINITY"
    else:
        rho = signed_height_ratio(P)
        region = region_of(P)
        pos = above_BC(P)
        doc.update(normalized=[str(x) for x in norm], region=str(region), position=pos.value, rho=str(rho),
                   rho_approx=float(rho))
        text = (f"{label(n)} {_fmt_triple(triple)} normalized {_fmt_triple(norm)} region {region} "
                f"{pos.value} BC rho={rho}")
    print(_dump(doc) if args.json else text)
    return EXIT_OK


def cmd_compare(args, cfg: RunConfig, cat: Catalog) -> int:
    kind = _order(args.order)
    m, n = _center(args.m), _center(args.n)
    for c in (m, n):
        if c not in cat:
            raise UsageError(f"center {label(c)} is not in the catalog")
    fam = _family(args, TALL_ISOSCELES if kind is OrderKind.ISOSCELES else default_family(kind))
    v = compare(kind, m, n, cfg.plan, cat, cfg.budget, certify=not args.no_certify, family=fam)
    d = v.to_dict()
    if args.json:
        print(_dump(d))
    else:
        extra = f" ({v.direction}, {v.samples_tested} samples)" if v.kind is VerdictKind.UNDETERMINED else ""
        print(f"{d['order']} {d['m']} {d['n']}: {d['verdict']}{extra}" + (f" [{v.note}]" if v.note else ""))
    return EXIT_UNDETERMINED if v.kind is VerdictKind.UNDETERMINED else EXIT_OK


def _order(text: str) -> OrderKind:
    try:
        return OrderKind.parse(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_graph(args, cfg: RunConfig, cat: Catalog) -> int:
    kind = _order(args.order)
    centers = [c for c in parse_range(args.range) if c in cat]
    fam = _family(args, TALL_ISOSCELES if kind is OrderKind.ISOSCELES else default_family(kind))
    g = ordergraph.build_graph(kind, centers, cfg.plan, cfg.budget, cat, jobs=cfg.jobs, certify=args.certify,
                               family=fam)
    h = ordergraph.transitive_reduction(g)
    cuts = sorted(ordergraph.articulation_points(h), key=ordergraph._sort_key)
    reports = []
    present = set(g.nodes)
    for name in ordergraph.CHAINS_BY_ORDER[kind]:
        chain = ordergraph.PAPER_CHAINS[name]
        if all(c in present for c in chain):
            reports.append((name, ordergraph.verify_chain(g, chain)))
    if args.dot:
        Path(args.dot).write_text(ordergraph.to_dot(h))
    if args.output:
        Path(args.output).write_text(ordergraph.to_json(h))
    counts = {"certified": 0, "likely": 0}
    for cls in h.edges.values():
        counts[cls] += 1
    doc = {
        "order": kind.value,
        "family": fam.name,
        "nodes": len(g.nodes),
        "hasse_edges": counts,
        "excluded": {label(n): why for n, why in sorted(g.excluded.items(), key=lambda kv: ordergraph._sort_key(kv[0]))},
        "articulation_points": [label(c) for c in cuts],
        "chains": {name: r.to_dict() for name, r in reports},
    }
    if args.json:
        print(_dump(doc))
    else:
        print(f"{kind.value} order on {len(g.nodes)} centers ({fam.name}): "
              f"{counts['certified']} certified and {counts['likely']} likely covering edges")
        for n, why in doc["excluded"].items():
            print(f"  excluded {n}: {why}")
        print("  articulation points: " + (", ".join(doc["articulation_points"]) or "none"))
        for name, r in reports:
            status = "confirmed" if r.ok else "FAILS at " + " -> ".join(label(x) for x in r.first_failure)
            print(f"  chain {name} ({len(r.chain)} centers): {status}")
    ok = all(r.ok for _, r in reports)
    return EXIT_OK if ok else EXIT_UNDETERMINED


def cmd_coincide(args, cfg: RunConfig, cat: Catalog) -> int:
    m, n = _center(args.m), _center(args.n)
    try:
        lo, hi = (Fraction(x) for x in args.k_range.split(","))
    except ValueError:
        raise UsageError("--k-range expects lo,hi") from None
    try:
        roots = find_coincidence_iso(m, n, (lo, hi), cat, Fraction(args.width), cfg.precision_bits)
    except IdenticallyEqual as e:
        print(_dump({"m": label(m), "n": label(n), "identically_equal": True}) if args.json else str(e))
        return EXIT_OK
    doc = {"m": label(m), "n": label(n), "k_range": [str(lo), str(hi)], "roots": [r.to_dict() for r in roots]}
    if args.json:
        print(_dump(doc))
    else:
        if not roots:
            print(f"{label(m)} and {label(n)} never coincide for k in ({lo}, {hi})")
        for r in roots:
            print(f"k = {r.approx:.10f}  root of {r.defining_polynomial.positive_primitive()}  "
                  f"residual {r.residual:.3g} at {r.precision_bits} bits")
    return EXIT_OK


def _classify_one(pred: str, n, fam: TriangleFamily, cfg: RunConfig, cat: Catalog):
    if pred == "outside-angle-a":
        return classify_outside_angle_A(n, fam, cfg.plan, cat)
    if pred == "above-bc":
        return classify_above_BC(n, fam, cfg.plan, cat)
    if pred == "trace-right-of-c":
        return classify_trace_right_of_C(n, fam, cfg.plan, cat)
    return coincides_with_vertex_A(n, fam, cfg.plan, cat)


_PRED_FAMILY = {
    "outside-angle-a": ISOSCELES_ALL,
    "above-bc": ACUTE_MIN_A,
    "trace-right-of-c": ACUTE_SCALENE,
    "at-vertex-a": ISOSCELES_ALL,
}


def cmd_classify(args, cfg: RunConfig, cat: Catalog) -> int:
    pred = args.predicate.lower()
    if pred not in PREDICATES:
        raise UsageError(f"unknown predicate {args.predicate!r}; choose from {', '.join(PREDICATES)}")
    fam = _family(args, _PRED_FAMILY[pred])
    centers = [c for c in parse_range(args.range) if c in cat]
    results = {}
    groups: dict = {}
    for n in centers:
        try:
            rv = _classify_one(pred, n, fam, cfg, cat)
        except (NotComparable, CatalogError, GeometryError) as e:
            results[label(n)] = {"verdict": "DegenerateNote", "note": str(e)}
            groups.setdefault("DegenerateNote", []).append(label(n))
            continue
        results[label(n)] = rv.to_dict()
        groups.setdefault(rv.kind.value, []).append(label(n))
    doc = {"predicate": pred, "family": fam.name, "plan": cfg.plan.to_dict(), "summary": groups, "results": results}
    if args.json:
        print(_dump(doc))
    else:
        print(f"{pred} over {fam.name}, {len(centers)} centers")
        for kind in RegionKind:
            if kind.value in groups:
                print(f"  {kind.value} ({len(groups[kind.value])}): {', '.join(groups[kind.value])}")
        if "DegenerateNote" in groups and "DegenerateNote" not in [k.value for k in RegionKind]:
            print(f"  DegenerateNote: {', '.join(groups['DegenerateNote'])}")
    return EXIT_OK


def cmd_render(args, cfg: RunConfig, cat: Catalog) -> int:
    from .render import FigureSpec, render_svg

    try:
        spec = FigureSpec.load(args.specfile)
    except (OSError, KeyError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read figure spec: {e}") from None
    svg = render_svg(spec, cat)
    if args.output:
        Path(args.output).write_text(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_validate(args, cfg: RunConfig, cat: Catalog) -> int:
    rep = validate_catalog(args.catalog or cat)
    doc = {"checked": rep.checked, "ok": rep.ok, "failures": [[label(n) if n is not None else None, msg]
                                                             for n, msg in rep.failures]}
    if args.json:
        print(_dump(doc))
    else:
        print(f"{rep.checked} entries checked, {len(rep.failures)} failures")
        for n, msg in rep.failures:
            print(f"  {label(n) if n is not None else '-'}: {msg}")
    return EXIT_OK if rep.ok else EXIT_USAGE


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--catalog", help="catalog file (default: $CENTER_ORDER_CATALOG or the shipped data)")
    g.add_argument("--family", help="triangle family: tall, isosceles, acute-min-a, acute-scalene")
    g.add_argument("--grid", type=int, default=40, help="grid density per axis (default 40)")
    g.add_argument("--samples", type=int, default=10000, help="random samples (default 10000)")
    g.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    g.add_argument("--denom-bound", type=int, default=1000, help="denominator bound for random rationals")
    g.add_argument("--depth", type=int, default=12, help="subdivision depth (default 12)")
    g.add_argument("--max-boxes", type=int, default=400000, help="subdivision box budget")
    g.add_argument("--bits", type=int, default=256, help="precision for numeric checks (default 256)")
    g.add_argument("--jobs", type=int, default=1, help="worker processes for pair comparisons")
    g.add_argument("--json", action="store_true", help="machine-readable output")
    g.add_argument("--print-config", action="store_true", help="print the effective configuration and exit")

    p = _Parser(prog="center-order", description="Orderings of triangle centers.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("eval", parents=[common], help="evaluate a center at given sides")
    s.add_argument("center")
    s.add_argument("--sides", help="a,b,c as rationals, or expressions such as sqrt(2)")
    s.add_argument("--squares", help="a²,b²,c² as rationals or x + y*sqrt(d)")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("compare", parents=[common], help="compare two centers in an order")
    s.add_argument("--order", required=True, help="iso, vertex, side or trace")
    s.add_argument("m")
    s.add_argument("n")
    s.add_argument("--no-certify", action="store_true", help="skip the subdivision filter")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("graph", parents=[common], help="build an order graph and check the known chains")
    s.add_argument("--order", required=True)
    s.add_argument("--range", required=True, help="centers, e.g. 1..30 or 1..29,B,C")
    s.add_argument("--dot", help="write the Hasse diagram as DOT")
    s.add_argument("-o", "--output", help="write the Hasse diagram as JSON")
    s.add_argument("--certify", action="store_true", help="run subdivision on covering edges")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("coincide", parents=[common], help="parameters where two centers coincide on (1,k,k)")
    s.add_argument("m")
    s.add_argument("n")
    s.add_argument("--k-range", default="1,10")
    s.add_argument("--width", default="1/100000000")
    s.set_defaults(func=cmd_coincide)

    s = sub.add_parser("classify", parents=[common], help="region classification over a family")
    s.add_argument("--predicate", required=True, help=", ".join(PREDICATES))
    s.add_argument("--range", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("render", parents=[common], help="SVG figure from a JSON figure spec")
    s.add_argument("specfile")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("catalog", parents=[common], help="catalog utilities")
    csub = s.add_subparsers(dest="catalog_command", parser_class=_Parser)
    v = csub.add_parser("validate", parents=[common], help="parse and check every entry")
    v.set_defaults(func=cmd_validate)
    s = sub.add_parser("validate", parents=[common], help="alias of 'catalog validate'")
    s.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = RunConfig.from_args(args)
        if args.print_config:
            print(_dump(asdict(cfg)))
            return EXIT_OK
        if args.grid < 0 or args.samples < 0 or args.jobs < 1 or args.bits < 64:
            raise UsageError("--grid/--samples must be >= 0, --jobs >= 1, --bits >= 64")
        cat = load_catalog(args.catalog) if args.catalog else default_catalog()
        return args.func(args, cfg, cat)
    except ordergraph.SoundnessAlarm as e:
        print(f"center-order: soundness alarm: {e}", file=sys.stderr)
        return EXIT_SOFTWARE
    except (UsageError, CatalogError, GeometryError, NotComparable, ValueError, OSError) as e:
        print(f"center-order: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
