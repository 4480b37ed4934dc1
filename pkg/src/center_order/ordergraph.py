"""Order graphs built from pairwise verdicts, their Hasse diagrams and exports."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import networkx as nx

from .catalog import PSEUDO_CENTERS, Catalog, default_catalog, label, load_catalog
from .decide import (
    OrderKind,
    RegionKind,
    SubdivisionBudget,
    Verdict,
    VerdictKind,
    at_infinity_identity,
    at_infinity_iso,
    classify_outside_angle_A_iso,
    compare,
    default_family,
)
from .decide.planar import region_signs
from .families import TALL_ISOSCELES, SamplePlan, TriangleFamily, pair_key, sample

# chains as stated for each order; "bounds" are three short chains on the isosceles family
PAPER_CHAINS = {
    "iso24": [20, 22, 8, 3, 9, 10, 21, 2, 5, 12, 17, 1, 13, 7, 6, 4, 27, 19, 28, 25, 11, 14, 16, 23],
    "iso48": [20, 22, 40, 72, 63, 8, 3, 9, 95, 77, 21, 2, 45, 38, 55, 37, 12, 17, 1, 61, 60, 81, 7, 82, 89,
              6, 65, 33, 51, 57, 4, 27, 19, 28, 25, 34, 64, 11, 98, 74, 67, 88, 14, 80, 36, 16, 44, 23],
    "vertex": [3, 9, 10, 2, 1, 6, 4, 19, 16],
    "side": [26, 20, 22, 40, 8, 9, 10, 2, 37, 1, 7, 29, 33, 4, 27, 19, 28, 25, 34, 24, 36, 16],
    "trace": [20, 22, 3, 8, 9, 21, 10, 2, 1, 17, 12, 7, 13, 29, 4, 27, 19, 28, 25, 24, 23],
    "bound15": [2, 15, 17],
    "bound24": [25, 24, 14],
    "bound29": [7, 29, 4],
    "traceC": ["C", 24],
    "trace650": [650, "B"],
}

CHAINS_BY_ORDER = {
    OrderKind.ISOSCELES: ["iso24", "iso48", "bound15", "bound24", "bound29"],
    OrderKind.VERTEX: ["vertex"],
    OrderKind.SIDE: ["side"],
    OrderKind.TRACE: ["trace", "traceC", "trace650"],
}

CERTIFIED = "certified"
LIKELY = "likely"


class SoundnessAlarm(RuntimeError):
    """A directed cycle among strict verdicts: the decision engine is wrong somewhere."""


def _sort_key(n):
    return (1, str(n)) if isinstance(n, str) else (0, n)


def edge_class(v: Verdict) -> tuple | None:
    """(source, target, class) for an edge-producing verdict, else None."""
    if v.kind is VerdictKind.CERTIFIED_PRECEDES:
        return v.m, v.n, CERTIFIED
    if v.kind is VerdictKind.CERTIFIED_SUCCEEDS:
        return v.n, v.m, CERTIFIED
    if v.kind is VerdictKind.UNDETERMINED and v.direction == "precedes":
        return v.m, v.n, LIKELY
    if v.kind is VerdictKind.UNDETERMINED and v.direction == "succeeds":
        return v.n, v.m, LIKELY
    return None


@dataclass
class OrderGraph:
    kind: OrderKind
    nodes: list = field(default_factory=list)
    edges: dict = field(default_factory=dict)  # (src, dst) -> (class, Verdict)
    excluded: dict = field(default_factory=dict)  # index -> reason
    verdicts: dict = field(default_factory=dict)  # (m, n) with m listed first in nodes -> Verdict
    config: dict = field(default_factory=dict)

    def digraph(self, classes=(CERTIFIED, LIKELY)) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(e for e, (cls, _) in self.edges.items() if cls in classes)
        return g

    def verdict(self, m, n) -> Verdict | None:
        if (m, n) in self.verdicts:
            return self.verdicts[(m, n)]
        if (n, m) in self.verdicts:
            return self.verdicts[(n, m)].swapped()
        return None


@dataclass
class HasseDiagram:
    kind: OrderKind
    nodes: list
    edges: dict  # (src, dst) -> class
    excluded: dict = field(default_factory=dict)

    def digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.edges)
        return g


@dataclass
class ChainReport:
    chain: list
    ok: bool
    first_failure: tuple | None = None
    links: list = field(default_factory=list)  # (m, n, status)

    def to_dict(self) -> dict:
        return {
            "chain": [label(x) for x in self.chain],
            "ok": self.ok,
            "first_failure": [label(x) for x in self.first_failure] if self.first_failure else None,
            "links": [{"m": label(m), "n": label(n), "status": st} for m, n, st in self.links],
        }


# -- exclusions -------------------------------------------------------------------------


def exclusions(kind: OrderKind, centers, plan: SamplePlan | None = None, cat: Catalog | None = None,
               family: TriangleFamily | None = None) -> dict:
    """Centers whose comparison quantity is not defined across the family, with the reason."""
    cat = cat or default_catalog()
    out = {}
    if kind is OrderKind.ISOSCELES:
        fam = family or TALL_ISOSCELES
        for n in centers:
            if n in PSEUDO_CENTERS:
                continue
            if at_infinity_iso(n, cat):
                out[n] = "at infinity"
                continue
            rv = classify_outside_angle_A_iso(n, fam, cat)
            if rv.kind in (RegionKind.SOMETIMES, RegionKind.ALWAYS):
                out[n] = "sometimes outside angle A"
        return out
    fam = family or default_family(kind)
    plan = plan or SamplePlan()
    samples = sample(fam, plan, key=pair_key("graph", kind.value))
    pred = "trace-right-of-c" if kind is OrderKind.TRACE else "above-bc"
    for n in centers:
        if n in PSEUDO_CENTERS:
            continue
        if at_infinity_identity(n, cat):
            out[n] = "at infinity"
            continue
        dens = {x[1] if x is not None else 0 for x in region_signs(cat, pred, n, samples)}
        if dens != {1} and dens != {-1}:
            out[n] = "trace undefined or unbounded" if kind is OrderKind.TRACE else "reaches the line at infinity"
    return out


# -- building -----------------------------------------------------------------------------

_worker_cats: dict = {}


def _worker_catalog(source: str) -> Catalog:
    if source not in _worker_cats:
        _worker_cats[source] = load_catalog(None if source.startswith("builtin:") else source)
    return _worker_cats[source]


def _compare_job(args):
    kind, m, n, plan, budget, certify, family, key, source = args
    cat = _worker_catalog(source) if source is not None else default_catalog()
    return _compare_one(kind, m, n, plan, cat, budget, certify, family, key)


def _compare_one(kind, m, n, plan, cat, budget, certify, family, key) -> Verdict:
    if kind is OrderKind.ISOSCELES:
        return compare(kind, m, n, cat=cat, family=family)
    from .decide import compare_2d

    return compare_2d(kind, m, n, plan, cat, family, budget, certify=certify, sample_key=key)


def build_graph(kind: OrderKind, centers, plan: SamplePlan | None = None, budget: SubdivisionBudget | None = None,
                cat: Catalog | None = None, jobs: int = 1, certify: bool = False,
                family: TriangleFamily | None = None, exclude: bool = True) -> OrderGraph:
    """Compare every unordered pair once and keep the strict, consistent directions as edges.

    Planar orders share one sample set across all pairs, which keeps the
    sampled relation transitive.  With ``certify`` the subdivision filter is
    run on the covering edges only, after the reduction.
    """
    cat = cat or default_catalog()
    plan = plan or SamplePlan()
    family = family or (TALL_ISOSCELES if kind is OrderKind.ISOSCELES else default_family(kind))
    centers = sorted(dict.fromkeys(centers), key=_sort_key)
    excl = exclusions(kind, centers, plan, cat, family) if exclude else {}
    nodes = [n for n in centers if n not in excl]
    key = pair_key("graph", kind.value)
    pairs = [(nodes[i], nodes[j]) for i in range(len(nodes)) for j in range(i + 1, len(nodes))]
    source = cat.source or None
    if jobs > 1 and len(pairs) > 1 and source is not None:
        args = [(kind, m, n, plan, budget, False, family, key, source) for m, n in pairs]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_compare_job, args, chunksize=max(1, len(args) // (4 * jobs))))
    else:
        results = [_compare_one(kind, m, n, plan, cat, budget, False, family, key) for m, n in pairs]
    g = OrderGraph(kind, nodes, excluded=excl,
                   config={"family": family.name, "plan": plan.to_dict(), "certify": certify})
    for (m, n), v in zip(pairs, results):
        g.verdicts[(m, n)] = v
        e = edge_class(v)
        if e is not None:
            g.edges[(e[0], e[1])] = (e[2], v)
    _check_acyclic(g)
    if certify and kind is not OrderKind.ISOSCELES:
        for (s, t) in transitive_reduction(g).edges:
            v = _compare_one(kind, s, t, plan, cat, budget, True, family, key)
            g.edges[(s, t)] = (edge_class(v)[2], v)
            if (s, t) in g.verdicts:
                g.verdicts[(s, t)] = v
            else:
                g.verdicts[(t, s)] = v.swapped()
    return g


def _check_acyclic(g: OrderGraph):
    dg = g.digraph()
    if not nx.is_directed_acyclic_graph(dg):
        cycle = nx.find_cycle(dg)
        raise SoundnessAlarm("directed cycle among strict verdicts: " + " -> ".join(label(a) for a, _ in cycle))


def transitive_reduction(g: OrderGraph) -> HasseDiagram:
    dg = g.digraph()
    if not nx.is_directed_acyclic_graph(dg):
        _check_acyclic(g)
    red = nx.transitive_reduction(dg)
    edges = {e: g.edges[e][0] for e in sorted(red.edges, key=lambda e: (_sort_key(e[0]), _sort_key(e[1])))}
    return HasseDiagram(g.kind, list(g.nodes), edges, dict(g.excluded))


def articulation_points(h) -> set:
    """Cut vertices of the underlying undirected graph."""
    dg = h.digraph() if hasattr(h, "digraph") else h
    return set(nx.articulation_points(dg.to_undirected()))


def verify_chain(g: OrderGraph, chain: list, cat: Catalog | None = None, plan: SamplePlan | None = None,
                 compute_missing: bool = False) -> ChainReport:
    """Every consecutive link must be a certified or consistent strict precedence."""
    if len(chain) < 2:
        raise ValueError("a chain needs at least two centers")
    links = []
    first = None
    for m, n in zip(chain, chain[1:]):
        v = g.verdict(m, n)
        if v is None and compute_missing and m not in g.excluded and n not in g.excluded:
            v = _compare_one(g.kind, m, n, plan or SamplePlan(), cat or default_catalog(), None, False,
                             None if g.kind is OrderKind.ISOSCELES else default_family(g.kind),
                             pair_key("graph", g.kind.value))
            g.verdicts[(m, n)] = v
        if v is None:
            status = "missing"
        elif v.kind is VerdictKind.CERTIFIED_PRECEDES:
            status = CERTIFIED
        elif v.kind is VerdictKind.UNDETERMINED and v.direction == "precedes":
            status = LIKELY
        else:
            status = v.kind.value
        links.append((m, n, status))
        if status not in (CERTIFIED, LIKELY) and first is None:
            first = (m, n)
    return ChainReport(list(chain), first is None, first, links)


# -- export -------------------------------------------------------------------------------


def _edge_items(obj):
    if isinstance(obj, OrderGraph):
        return [(s, t, cls) for (s, t), (cls, _) in obj.edges.items()]
    return [(s, t, cls) for (s, t), cls in obj.edges.items()]


def to_dot(obj) -> str:
    lines = [f'digraph "{obj.kind.value}" {{', "  rankdir=TB;"]
    for n in sorted(obj.nodes, key=_sort_key):
        lines.append(f'  {label(n)} [label="{label(n)}"];')
    for s, t, cls in sorted(_edge_items(obj), key=lambda e: (_sort_key(e[0]), _sort_key(e[1]))):
        style = "" if cls == CERTIFIED else " [style=dashed]"
        lines.append(f"  {label(s)} -> {label(t)}{style};")
    for n, why in sorted(obj.excluded.items(), key=lambda kv: _sort_key(kv[0])):
        lines.append(f"  // excluded {label(n)}: {why}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(obj, indent: int | None = 2) -> str:
    edges = []
    for s, t, cls in sorted(_edge_items(obj), key=lambda e: (_sort_key(e[0]), _sort_key(e[1]))):
        item = {"from": label(s), "to": label(t), "class": cls}
        if isinstance(obj, OrderGraph):
            item["verdict"] = obj.edges[(s, t)][1].kind.value
        edges.append(item)
    doc = {
        "order": obj.kind.value,
        "nodes": [label(n) for n in sorted(obj.nodes, key=_sort_key)],
        "edges": edges,
        "exclusions": {str(n): why for n, why in sorted(obj.excluded.items(), key=lambda kv: _sort_key(kv[0]))},
    }
    if isinstance(obj, OrderGraph):
        doc["config"] = obj.config
    return json.dumps(doc, indent=indent, sort_keys=False)


def export(obj, fmt: str = "dot") -> str:
    fmt = fmt.lower()
    if fmt == "dot":
        return to_dot(obj)
    if fmt == "json":
        return to_json(obj)
    raise ValueError(f"unknown export format {fmt!r}")
