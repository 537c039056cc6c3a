"""Formulas of the modal language: AST, parser and printer.

Concrete syntax (ASCII, loosest binding first)::

    formula := equiv
    equiv   := imp ("<->" imp)*
    imp     := or ("->" imp)?          right associative
    or      := and ("|" and)*
    and     := fuse ("&" fuse)*
    fuse    := unary ("*" unary)*
    unary   := ("~" | "[]" | "<>") unary | atom
    atom    := "0" | "1" | ident | "(" formula ")"

``~f`` abbreviates ``f -> 0`` and ``f <-> g`` abbreviates
``(f -> g) & (g -> f)``; neither has its own node. The unicode symbols
for box, diamond, negation and the connectives are accepted as aliases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from ..report import MBLError


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Const0(Formula):
    pass


@dataclass(frozen=True)
class Const1(Formula):
    pass


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Fuse(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    sub: Formula


@dataclass(frozen=True)
class Dia(Formula):
    sub: Formula


BINARY = (And, Or, Fuse, Imp)
UNARY = (Box, Dia)


def Neg(f: Formula) -> Formula:
    return Imp(f, Const0())


def Equiv(f: Formula, g: Formula) -> Formula:
    return And(Imp(f, g), Imp(g, f))


def variables(f: Formula) -> list[str]:
    """Variable names in sorted order."""
    out: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            out.add(g.name)
        elif isinstance(g, BINARY):
            stack.extend((g.left, g.right))
        elif isinstance(g, UNARY):
            stack.append(g.sub)
    return sorted(out)


def modal_depth(f: Formula) -> int:
    if isinstance(f, BINARY):
        return max(modal_depth(f.left), modal_depth(f.right))
    if isinstance(f, UNARY):
        return 1 + modal_depth(f.sub)
    return 0


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order, children before parents."""
    if isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, UNARY):
        yield from subformulas(f.sub)
    yield f


# ---------------------------------------------------------------------------
# parsing


class FormulaSyntaxError(MBLError, ValueError):
    def __init__(self, message: str, position: int, expected: frozenset[str]):
        super().__init__(f"{message} at position {position}; expected one of: {', '.join(sorted(expected))}")
        self.position = position
        self.expected = expected


_ALIASES = {
    "↔": "<->", "≡": "<->", "→": "->", "∨": "|", "∧": "&", "⊙": "*",
    "¬": "~", "□": "[]", "◇": "<>", "◊": "<>",
}
_TOKEN = re.compile(r"\s*(<->|->|\[\]|<>|[|&*~()01]|[A-Za-z_][A-Za-z0-9_']*|[↔≡→∨∧⊙¬□◇◊])")
_ATOM_START = frozenset({"0", "1", "ident", "("})
_UNARY_START = _ATOM_START | {"~", "[]", "<>"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """(kind, text, position) triples ending with an end marker."""
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, _UNARY_START)
        tok = m.group(1)
        start = m.start(1)
        tok = _ALIASES.get(tok, tok)
        kind = "ident" if (tok[0].isalpha() or tok[0] == "_") else tok
        out.append((kind, tok, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: str, expected: frozenset[str]):
        k, t, p = self.toks[self.i]
        if k != kind:
            shown = "end of input" if k == "end" else repr(t)
            raise FormulaSyntaxError(f"unexpected {shown}", p, expected)
        self.i += 1
        return t

    def parse(self) -> Formula:
        f = self.equiv()
        self.take("end", frozenset({"end", "<->", "->", "|", "&", "*"}))
        return f

    def equiv(self) -> Formula:
        f = self.imp()
        while self.peek() == "<->":
            self.i += 1
            f = Equiv(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.peek() == "->":
            self.i += 1
            return Imp(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.fuse()
        while self.peek() == "&":
            self.i += 1
            f = And(f, self.fuse())
        return f

    def fuse(self) -> Formula:
        f = self.unary()
        while self.peek() == "*":
            self.i += 1
            f = Fuse(f, self.unary())
        return f

    def unary(self) -> Formula:
        k = self.peek()
        if k == "~":
            self.i += 1
            return Neg(self.unary())
        if k == "[]":
            self.i += 1
            return Box(self.unary())
        if k == "<>":
            self.i += 1
            return Dia(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        k, t, p = self.toks[self.i]
        if k == "0":
            self.i += 1
            return Const0()
        if k == "1":
            self.i += 1
            return Const1()
        if k == "ident":
            self.i += 1
            return Var(t)
        if k == "(":
            self.i += 1
            f = self.equiv()
            self.take(")", frozenset({")", "<->", "->", "|", "&", "*"}))
            return f
        shown = "end of input" if k == "end" else repr(t)
        raise FormulaSyntaxError(f"unexpected {shown}", p, _UNARY_START)


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printing

_PREC = {"equiv": 1, Imp: 2, Or: 3, And: 4, Fuse: 5}
_SYM = {Imp: "->", Or: "|", And: "&", Fuse: "*"}


def _as_equiv(f: Formula):
    if (
        isinstance(f, And)
        and isinstance(f.left, Imp)
        and isinstance(f.right, Imp)
        and f.left.left == f.right.right
        and f.left.right == f.right.left
    ):
        return f.left.left, f.left.right
    return None


def to_text(f: Formula) -> str:
    """Shortest rendering that parses back to the same tree."""
    return _show(f, 0)


def _show(f: Formula, ctx: int) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Const0):
        return "0"
    if isinstance(f, Const1):
        return "1"
    if isinstance(f, Imp) and isinstance(f.right, Const0):
        return "~" + _show(f.left, 6)
    if isinstance(f, Box):
        return "[]" + _show(f.sub, 6)
    if isinstance(f, Dia):
        return "<>" + _show(f.sub, 6)
    eq = _as_equiv(f)
    if eq is not None:
        prec, text = 1, f"{_show(eq[0], 1)} <-> {_show(eq[1], 2)}"
    elif isinstance(f, Imp):
        prec, text = 2, f"{_show(f.left, 3)} -> {_show(f.right, 2)}"
    else:
        prec = _PREC[type(f)]
        text = f"{_show(f.left, prec)} {_SYM[type(f)]} {_show(f.right, prec + 1)}"
    return f"({text})" if prec < ctx else text
