"""SVG figures of a triangle with labeled centers and optional A-traces."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from xml.sax.saxutils import escape

from .catalog import Catalog, CatalogError, Sides, default_catalog, eval_center, key_of, label
from .exactnum import quad_sign


@dataclass
class FigureSpec:
    sides: Sides
    centers: list = field(default_factory=list)
    labels: bool = True
    show_traces: bool = False
    show_bands: bool = False
    width: int = 640
    height: int = 480
    margin: int = 40

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0 or self.margin < 0 or 2 * self.margin >= min(self.width, self.height):
            raise ValueError("canvas must be positive and larger than twice the margin")
        self.centers = [key_of(c) for c in self.centers]

    @classmethod
    def from_dict(cls, d: dict) -> FigureSpec:
        s = d["sides"]
        sides = Sides.parse(s) if isinstance(s, str) else Sides(*(Fraction(str(x)) for x in s))
        canvas = d.get("canvas", {})
        return cls(sides, list(d.get("centers", [])), bool(d.get("labels", True)),
                   bool(d.get("show_traces", False)), bool(d.get("show_bands", False)),
                   int(canvas.get("width", 640)), int(canvas.get("height", 480)), int(d.get("margin", 40)))

    @classmethod
    def load(cls, path) -> FigureSpec:
        return cls.from_dict(json.loads(Path(path).read_text()))


def embedding(s: Sides) -> dict:
    """Exact Cartesian vertices: B = (0, 0), C = (a, 0), A = (x, sqrt(y2)) with y2 kept rational."""
    x = (s.a * s.a + s.c * s.c - s.b * s.b) / (2 * s.a)
    y2 = s.c * s.c - x * x
    return {"A": (x, y2), "B": (Fraction(0), Fraction(0)), "C": (s.a, Fraction(0))}


def vertex_floats(s: Sides) -> dict:
    e = embedding(s)
    return {k: (float(x), math.sqrt(float(y2)) if k == "A" else float(y2)) for k, (x, y2) in e.items()}


def bary_to_xy(P, verts: dict) -> tuple[float, float] | None:
    """Cartesian point p·A + q·B + r·C over p + q + r; None at infinity."""
    p, q, r = (float(t) for t in P)
    tot = p + q + r
    if tot == 0:
        return None
    (ax, ay), (bx, by), (cx, cy) = verts["A"], verts["B"], verts["C"]
    return (p * ax + q * bx + r * cx) / tot, (p * ay + q * by + r * cy) / tot


class _Canvas:
    def __init__(self, spec: FigureSpec, pts: list):
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        self.x0, self.y0 = min(xs), min(ys)
        w = max(max(xs) - self.x0, 1e-12)
        h = max(max(ys) - self.y0, 1e-12)
        m = spec.margin
        self.scale = min((spec.width - 2 * m) / w, (spec.height - 2 * m) / h)
        self.m = m
        self.height = spec.height
        self.width = spec.width

    def __call__(self, x: float, y: float) -> tuple[float, float]:
        return self.m + (x - self.x0) * self.scale, self.height - self.m - (y - self.y0) * self.scale

    def visible(self, X: float, Y: float) -> bool:
        return 0 <= X <= self.width and 0 <= Y <= self.height


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_svg(spec: FigureSpec, cat: Catalog | None = None) -> str:
    cat = cat or default_catalog()
    s = spec.sides
    verts = vertex_floats(s)
    points, traces, omitted, notes = [], [], [], []
    for i, n in enumerate(spec.centers):
        if n not in cat:
            raise CatalogError(f"center {label(n)} is not in the catalog")
        P = eval_center(cat, n, s)
        if quad_sign(P.total) == 0:
            omitted.append(n)
            continue
        xy = bary_to_xy(tuple(P), verts)
        points.append((i, n, xy))
        if spec.show_traces and quad_sign(P.v + P.w) != 0:
            v, w = float(P.v), float(P.w)
            traces.append((n, xy, (w * verts["C"][0] / (v + w), 0.0)))
    # the frame is the triangle itself; centers far outside are clipped
    cv = _Canvas(spec, list(verts.values()) + [t[2] for t in traces])
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        f"<title>{escape(f'triangle {s.a}, {s.b}, {s.c}')}</title>",
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    tri = " ".join(f"{_fmt(X)},{_fmt(Y)}" for X, Y in (cv(*verts[k]) for k in "ABC"))
    out.append(f'<polygon class="triangle" points="{tri}" fill="none" stroke="black" stroke-width="1.5"/>')
    if traces:
        bx, _ = cv(*verts["B"])
        cx, by = cv(*verts["C"])
        lo = min([bx] + [cv(*t[2])[0] for t in traces])
        hi = max([cx] + [cv(*t[2])[0] for t in traces])
        out.append(f'<line class="baseline" x1="{_fmt(lo)}" y1="{_fmt(by)}" x2="{_fmt(hi)}" y2="{_fmt(by)}" '
                   'stroke="gray" stroke-dasharray="4 3"/>')
    for k, (dx, dy, anchor) in {"A": (0, -8, "middle"), "B": (-8, 14, "end"), "C": (8, 14, "start")}.items():
        X, Y = cv(*verts[k])
        out.append(f'<text class="vertex" x="{_fmt(X + dx)}" y="{_fmt(Y + dy)}" text-anchor="{anchor}" '
                   f'font-size="14">{k}</text>')
    if spec.show_bands:
        ax, ay = cv(*verts["A"])
        for _, n, (x, y) in points:
            X, Y = cv(x, y)
            r = math.hypot(X - ax, Y - ay)
            out.append(f'<circle class="band" data-center="{label(n)}" cx="{_fmt(ax)}" cy="{_fmt(ay)}" '
                       f'r="{_fmt(r)}" fill="none" stroke="lightgray"/>')
    ax, ay = cv(*verts["A"])
    for n, _, (tx, ty) in traces:
        X, Y = cv(tx, ty)
        out.append(f'<line class="trace" data-center="{label(n)}" x1="{_fmt(ax)}" y1="{_fmt(ay)}" '
                   f'x2="{_fmt(X)}" y2="{_fmt(Y)}" stroke="steelblue" stroke-width="0.8"/>')
        out.append(f'<circle class="trace-point" data-center="{label(n)}" data-x="{tx!r}" cx="{_fmt(X)}" '
                   f'cy="{_fmt(Y)}" r="2.5" fill="steelblue"/>')
    for i, n, (x, y) in points:
        X, Y = cv(x, y)
        if not cv.visible(X, Y):
            notes.append(f"{label(n)} lies outside the canvas")
            continue
        ang = 2 * math.pi * (i % 8) / 8
        lx, ly = X + 9 * math.cos(ang), Y - 9 * math.sin(ang)
        out.append(f'<circle class="center" data-center="{label(n)}" cx="{_fmt(X)}" cy="{_fmt(Y)}" r="3" '
                   'fill="crimson"/>')
        if spec.labels:
            out.append(f'<text class="label" x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="11">{label(n)}</text>')
    for n in omitted:
        notes.append(f"{label(n)} omitted: at infinity")
    for j, text in enumerate(notes):
        out.append(f'<text class="note" x="8" y="{16 + 14 * j}" font-size="11" fill="gray">{escape(text)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
