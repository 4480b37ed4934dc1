"""Verdict types and their JSON shape."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ..catalog import Sides, label
from ..exactnum import RootIsolation


class OrderKind(enum.Enum):
    ISOSCELES = "iso"
    VERTEX = "vertex"
    SIDE = "side"
    TRACE = "trace"

    @classmethod
    def parse(cls, text: str) -> OrderKind:
        t = text.strip().lower()
        aliases = {"isosceles": "iso", "iso": "iso", "vertex": "vertex", "side": "side", "trace": "trace"}
        if t not in aliases:
            raise ValueError(f"unknown order {text!r}")
        return cls(aliases[t])


class VerdictKind(enum.Enum):
    CERTIFIED_PRECEDES = "CertifiedPrecedes"
    CERTIFIED_SUCCEEDS = "CertifiedSucceeds"
    EQUAL = "CertifiedEqualNowhereComparable"
    WEAK_PRECEDES = "CertifiedWeakPrecedes"
    WEAK_SUCCEEDS = "CertifiedWeakSucceeds"
    MIXED = "Mixed"
    UNDETERMINED = "Undetermined"
    DEGENERATE = "DegenerateNote"


_SWAP = {
    VerdictKind.CERTIFIED_PRECEDES: VerdictKind.CERTIFIED_SUCCEEDS,
    VerdictKind.CERTIFIED_SUCCEEDS: VerdictKind.CERTIFIED_PRECEDES,
    VerdictKind.WEAK_PRECEDES: VerdictKind.WEAK_SUCCEEDS,
    VerdictKind.WEAK_SUCCEEDS: VerdictKind.WEAK_PRECEDES,
}


def witness_to_json(w):
    if w is None:
        return None
    if isinstance(w, Sides):
        return [str(w.a), str(w.b), str(w.c)]
    if isinstance(w, RootIsolation):
        return {"k": w.to_dict()}
    return str(w)


@dataclass
class Verdict:
    order: OrderKind
    m: object
    n: object
    kind: VerdictKind
    certificate: dict | None = None
    witness_precede: object = None
    witness_succeed: object = None
    direction: str | None = None
    samples_tested: int = 0
    stats: dict = field(default_factory=dict)
    note: str = ""

    @property
    def decided(self) -> bool:
        return self.kind is not VerdictKind.UNDETERMINED

    @property
    def precedes(self) -> bool:
        """m before n: certified, or sampling-consistent in that direction."""
        if self.kind is VerdictKind.CERTIFIED_PRECEDES:
            return True
        return self.kind is VerdictKind.UNDETERMINED and self.direction == "precedes"

    @property
    def certified(self) -> bool:
        return self.kind in (VerdictKind.CERTIFIED_PRECEDES, VerdictKind.CERTIFIED_SUCCEEDS)

    def swapped(self) -> Verdict:
        d = {"precedes": "succeeds", "succeeds": "precedes"}.get(self.direction, self.direction)
        return Verdict(
            self.order,
            self.n,
            self.m,
            _SWAP.get(self.kind, self.kind),
            self.certificate,
            self.witness_succeed,
            self.witness_precede,
            d,
            self.samples_tested,
            dict(self.stats),
            self.note,
        )

    def to_dict(self) -> dict:
        out = {
            "order": self.order.value,
            "m": label(self.m),
            "n": label(self.n),
            "verdict": self.kind.value,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.witness_precede is not None or self.witness_succeed is not None:
            out["witnesses"] = {
                "precede": witness_to_json(self.witness_precede),
                "succeed": witness_to_json(self.witness_succeed),
            }
        if self.direction is not None:
            out["direction"] = self.direction
        out["stats"] = dict(self.stats, samples_tested=self.samples_tested)
        if self.note:
            out["note"] = self.note
        return out


class RegionKind(enum.Enum):
    ALWAYS = "Always"
    NEVER = "Never"
    SOMETIMES = "Sometimes"
    DEGENERATE = "DegenerateNote"
    # above-BC partition
    ALWAYS_ABOVE = "AlwaysAbove"
    ALWAYS_ON_OR_ABOVE = "AlwaysOnOrAbove"
    ALWAYS_BELOW = "AlwaysBelow"
    AT_INFINITY = "AtInfinity"
    # vertex-A coincidence
    IDENTICALLY_AT_A = "IdenticallyAtVertexA"
    AT_ISOLATED_PARAMETERS = "AtIsolatedParameters"


@dataclass
class RegionVerdict:
    predicate: str
    n: object
    family: str
    kind: RegionKind
    witness_in: object = None
    witness_out: object = None
    certificate: dict | None = None
    samples_tested: int = 0
    roots: list = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        out = {
            "predicate": self.predicate,
            "n": label(self.n),
            "family": self.family,
            "verdict": self.kind.value,
        }
        if self.witness_in is not None or self.witness_out is not None:
            out["witnesses"] = {"in": witness_to_json(self.witness_in), "out": witness_to_json(self.witness_out)}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.roots:
            out["roots"] = [r.to_dict() for r in self.roots]
        out["samples_tested"] = self.samples_tested
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class CoincidenceRoot:
    root: RootIsolation
    defining_polynomial: object  # UniPoly
    residual: float
    precision_bits: int

    @property
    def approx(self) -> float:
        return float(self.root.mid)

    def to_dict(self) -> dict:
        return {
            "k": self.approx,
            "defining_polynomial": str(self.defining_polynomial.primitive()),
            "interval": [str(self.root.lo), str(self.root.hi)],
            "interval_width": float(self.root.width),
            "residual": self.residual,
            "precision_bits": self.precision_bits,
        }


class NotComparable(ValueError):
    """The comparison quantity is undefined on the family (e.g. at infinity)."""


class IdenticallyEqual(ValueError):
    """Two centers coincide on the whole family."""
