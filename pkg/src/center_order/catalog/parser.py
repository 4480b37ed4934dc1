"""Recursive-descent parser for first-coordinate expressions.

Grammar (whitespace ignored, no implicit multiplication)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | base ('^' uint)?
    base   := uint | 'a' | 'b' | 'c' | 'U' | '(' expr ')'

A leading unary minus is accepted so that entries such as ``-(b-c)^2`` can
be written directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

SYMBOLS = ("a", "b", "c", "U")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Num, Sym, Neg, BinOp, Pow]


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch in SYMBOLS:
            if i + 1 < len(text) and (text[i + 1].isalnum() or text[i + 1] == "_"):
                raise ParseError(f"unexpected identifier starting with {ch!r}", i)
            tokens.append(("sym", ch, i))
            i += 1
        elif ch in "+-*^()":
            tokens.append(("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, val, where = self.take()
        if val != value:
            found = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", where)

    def parse(self) -> Node:
        node = self.expr()
        kind, val, where = self.peek()
        if kind != "end":
            if val == ")":
                raise ParseError("unbalanced ')'", where)
            raise ParseError(f"unexpected token {val!r}", where)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Node:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.factor())
        node = self.base()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, where = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer literal", where)
            node = Pow(node, int(val))
        return node

    def base(self) -> Node:
        kind, val, where = self.take()
        if kind == "int":
            return Num(int(val))
        if kind == "sym":
            return Sym(val)
        if val == "(":
            node = self.expr()
            kind2, val2, where2 = self.take()
            if val2 != ")":
                raise ParseError("unbalanced '(' (missing ')')", where2)
            return node
        if kind == "end":
            raise ParseError("unexpected end of input", where)
        raise ParseError(f"unexpected token {val!r}", where)


def parse_center_expr(text: str) -> Node:
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text).parse()


def to_source(node: Node, names: dict[str, str] | None = None) -> str:
    """Render an AST as a Python expression over ring-valued variables."""
    names = names or {}
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Sym):
        return names.get(node.name, node.name)
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand, names)})"
    if isinstance(node, Pow):
        return f"({to_source(node.base, names)})**{node.exponent}"
    return f"({to_source(node.left, names)} {node.op} {to_source(node.right, names)})"


def symbols_used(node: Node) -> set[str]:
    if isinstance(node, Sym):
        return {node.name}
    if isinstance(node, Num):
        return set()
    if isinstance(node, (Neg,)):
        return symbols_used(node.operand)
    if isinstance(node, Pow):
        return symbols_used(node.base)
    return symbols_used(node.left) | symbols_used(node.right)


def permute(node: Node, mapping: dict[str, str]) -> Node:
    """Rename symbols (used for the cyclic substitution a->b->c->a)."""
    if isinstance(node, Sym):
        return Sym(mapping.get(node.name, node.name))
    if isinstance(node, Num):
        return node
    if isinstance(node, Neg):
        return Neg(permute(node.operand, mapping))
    if isinstance(node, Pow):
        return Pow(permute(node.base, mapping), node.exponent)
    return BinOp(node.op, permute(node.left, mapping), permute(node.right, mapping))
