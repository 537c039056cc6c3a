"""A fixed set of test formulas in the variables p and q."""

from __future__ import annotations

from .formula import Formula, parse_formula

FORMULA_TEXTS: tuple[str, ...] = (
    "p",
    "q",
    "0",
    "1",
    "~p",
    "~~p",
    "p -> q",
    "p * q",
    "p & q",
    "p | q",
    "p <-> q",
    "p * p",
    "[]p",
    "<>p",
    "[]q",
    "<>q",
    "~[]p",
    "~<>p",
    "[]~p",
    "<>~p",
    "[][]p",
    "<><>p",
    "[]<>p",
    "<>[]p",
    "[]p -> p",
    "p -> <>p",
    "[](p * p)",
    "[]p * []p",
    "<>(p * p)",
    "<>p * <>p",
    "[](p | q)",
    "[]p | []q",
    "[](p & q)",
    "[]p & []q",
    "<>(p | q)",
    "<>(p & q)",
    "[](p -> q)",
    "[]p -> []q",
    "<>p -> <>q",
    "[](p -> []q)",
    "<>p -> []q",
    "[](<>p | q)",
    "<>p | []q",
    "[](p * []q)",
    "[]p * []q",
    "<>(p * <>q)",
    "[](p -> q) -> ([]p -> []q)",
    "[](p * p) <-> []p * []p",
    "[](p | q) <-> []p | []q",
    "~[]p <-> <>~p",
)

FORMULAS: tuple[Formula, ...] = tuple(parse_formula(s) for s in FORMULA_TEXTS)
