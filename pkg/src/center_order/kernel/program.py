"""Straight-line programs for batched interval evaluation.

A :class:`Builder` hands out :class:`Reg` handles that overload ``+ - * **``
so the same generic formulas used for exact evaluation (center coordinates,
comparison quantities) can be traced into a flat instruction list.  Common
subexpressions are shared through a value-numbering table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OP_INPUT = 0
OP_CONST = 1
OP_ADD = 2
OP_SUB = 3
OP_MUL = 4
OP_NEG = 5
OP_SQR = 6
OP_SQRT = 7

OP_NAMES = {
    OP_INPUT: "input",
    OP_CONST: "const",
    OP_ADD: "add",
    OP_SUB: "sub",
    OP_MUL: "mul",
    OP_NEG: "neg",
    OP_SQR: "sqr",
    OP_SQRT: "sqrt",
}

_EXACT_LIMIT = 2**53


class Reg:
    __slots__ = ("builder", "index")

    def __init__(self, builder: Builder, index: int):
        self.builder = builder
        self.index = index

    def _coerce(self, other) -> Reg:
        if isinstance(other, Reg):
            return other
        return self.builder.const(other)

    def __add__(self, other):
        return self.builder.op(OP_ADD, self, self._coerce(other))

    def __radd__(self, other):
        return self.builder.op(OP_ADD, self._coerce(other), self)

    def __sub__(self, other):
        return self.builder.op(OP_SUB, self, self._coerce(other))

    def __rsub__(self, other):
        return self.builder.op(OP_SUB, self._coerce(other), self)

    def __mul__(self, other):
        return self.builder.op(OP_MUL, self, self._coerce(other))

    def __rmul__(self, other):
        return self.builder.op(OP_MUL, self._coerce(other), self)

    def __neg__(self):
        return self.builder.op(OP_NEG, self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        if n == 0:
            return self.builder.const(1)
        if n == 1:
            return self
        half = self ** (n // 2)
        sq = self.builder.op(OP_SQR, half)
        return sq * self if n % 2 else sq

    def sqrt(self):
        return self.builder.op(OP_SQRT, self)


@dataclass(frozen=True)
class Program:
    ops: np.ndarray  # int32
    arg1: np.ndarray  # int32
    arg2: np.ndarray  # int32
    consts: np.ndarray  # float64, (n, 2) lower/upper bounds for OP_CONST
    n_inputs: int
    outputs: np.ndarray  # int32

    @property
    def n_regs(self) -> int:
        return len(self.ops)

    def describe(self) -> str:
        lines = []
        for i, (o, x, y) in enumerate(zip(self.ops, self.arg1, self.arg2)):
            lines.append(f"r{i} = {OP_NAMES[int(o)]}({x}, {y})")
        return "\n".join(lines)


class Builder:
    def __init__(self, n_inputs: int):
        self._ops: list[tuple[int, int, int]] = []
        self._consts: list[tuple[float, float]] = []
        self._table: dict = {}
        self.inputs = [self._emit(OP_INPUT, i, 0, key=("in", i)) for i in range(n_inputs)]
        self.n_inputs = n_inputs

    def _emit(self, op: int, a: int, b: int, key=None, const=(0.0, 0.0)) -> Reg:
        if key is not None and key in self._table:
            return Reg(self, self._table[key])
        idx = len(self._ops)
        self._ops.append((op, a, b))
        self._consts.append(const)
        if key is not None:
            self._table[key] = idx
        return Reg(self, idx)

    def const(self, value) -> Reg:
        from fractions import Fraction

        v = Fraction(value)
        f = float(v)
        if v.denominator == 1 and abs(v.numerator) < _EXACT_LIMIT:
            bounds = (f, f)
        else:
            bounds = (float(np.nextafter(f, -np.inf)), float(np.nextafter(f, np.inf)))
        return self._emit(OP_CONST, 0, 0, key=("c", v), const=bounds)

    def op(self, op: int, x: Reg, y: Reg | None = None) -> Reg:
        a = x.index
        b = y.index if y is not None else 0
        if op in (OP_ADD, OP_MUL) and a > b:
            a, b = b, a
        return self._emit(op, a, b, key=(op, a, b))

    def build(self, outputs: list[Reg]) -> Program:
        ops = np.array([o[0] for o in self._ops], dtype=np.int32)
        a1 = np.array([o[1] for o in self._ops], dtype=np.int32)
        a2 = np.array([o[2] for o in self._ops], dtype=np.int32)
        consts = np.array(self._consts, dtype=np.float64).reshape(-1, 2)
        outs = np.array([r.index for r in outputs], dtype=np.int32)
        return Program(ops, a1, a2, consts, self.n_inputs, outs)
