"""Semantic validity over finite families of monadic BL-algebras."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..monadic import MonadicBLAlgebra
from ..report import InvalidParameter, Report
from .formula import (
    Box,
    Dia,
    Equiv,
    Formula,
    Fuse,
    Imp,
    Neg,
    Or,
    And,
    Var,
    modal_depth,
    parse_formula,
    variables,
)
from .semantics import eval_all

P, Q = Var("p"), Var("q")

# propositional combinations of modal formulas in the schemata
NU_CATALOGUE: tuple[Formula, ...] = (
    Box(Q),
    Dia(Q),
    Neg(Box(Q)),
    Or(Box(Q), Dia(Q)),
    And(Box(Q), Dia(Q)),
    Fuse(Box(Q), Dia(Q)),
)

PHI_CATALOGUE: tuple[Formula, ...] = tuple(
    parse_formula(s)
    for s in (
        "p", "q", "0", "1", "~p", "p * q", "p -> q", "p | q", "p & q", "p * p",
        "[]p", "<>p", "[]q", "<>q", "[]p -> q", "<>p * q", "[](p | q)", "<>(p * q)",
    )
)

# each schema is paired with the algebraic fact that makes it valid
AXIOM_SOURCES = {
    "box1": "M1: forall a -> a = 1",
    "dia1": "M7: a -> exists a = 1",
    "box2": "forall(c -> a) = c -> forall a for c in the quantifier image",
    "dia2": "forall(a -> c) = exists a -> c for c in the quantifier image",
    "box3": "forall(c v a) = c v forall a for c in the quantifier image",
    "dia3": "M5: exists(a * a) = exists a * exists a",
    "A1": "M1",
    "A2": "M2",
    "A3": "M3",
    "A4": "M4",
    "A5": "M5",
}


def s5_instances(max_depth: int = 2) -> dict[str, list[Formula]]:
    """Instances of the six modal schemata with phi from PHI_CATALOGUE and nu
    from NU_CATALOGUE, keeping those of modal depth <= max_depth."""
    out = {
        "box1": [Imp(Box(f), f) for f in PHI_CATALOGUE],
        "dia1": [Imp(f, Dia(f)) for f in PHI_CATALOGUE],
        "box2": [Imp(Box(Imp(n, f)), Imp(n, Box(f))) for n in NU_CATALOGUE for f in PHI_CATALOGUE],
        "dia2": [Imp(Box(Imp(f, n)), Imp(Dia(f), n)) for n in NU_CATALOGUE for f in PHI_CATALOGUE],
        "box3": [Imp(Box(Or(n, f)), Or(n, Box(f))) for n in NU_CATALOGUE for f in PHI_CATALOGUE],
        "dia3": [Equiv(Dia(Fuse(f, f)), Fuse(Dia(f), Dia(f))) for f in PHI_CATALOGUE],
    }
    return {k: [f for f in v if modal_depth(f) <= max_depth] for k, v in out.items()}


def s5_prime_instances(max_depth: int = 2) -> dict[str, list[Formula]]:
    pairs = list(itertools.product(PHI_CATALOGUE, repeat=2))
    out = {
        "A1": [Imp(Box(f), f) for f in PHI_CATALOGUE],
        "A2": [Equiv(Box(Imp(f, Box(g))), Imp(Dia(f), Box(g))) for f, g in pairs],
        "A3": [Equiv(Box(Imp(Box(f), g)), Imp(Box(f), Box(g))) for f, g in pairs],
        "A4": [Equiv(Box(Or(Dia(f), g)), Or(Dia(f), Box(g))) for f, g in pairs],
        "A5": [Equiv(Dia(Fuse(f, f)), Fuse(Dia(f), Dia(f))) for f in PHI_CATALOGUE],
    }
    return {k: [f for f in v if modal_depth(f) <= max_depth] for k, v in out.items()}


@dataclass
class ValidityResult:
    valid: bool
    formula: Formula
    checked: int
    algebra_index: int | None = None
    algebra: MonadicBLAlgebra | None = None
    assignment: dict[str, int] | None = None
    value: int | None = None

    def __bool__(self) -> bool:
        return self.valid

    def describe(self) -> str:
        if self.valid:
            return f"valid over {self.checked} algebra(s)"
        B = self.algebra.base
        asg = ", ".join(f"v({k}) = {B.label(v)}" for k, v in self.assignment.items())
        return (
            f"countermodel: algebra #{self.algebra_index} (size {B.size}), {asg or 'no variables'}; "
            f"value {B.label(self.value)}"
        )

    def to_dict(self) -> dict:
        out = {"valid": self.valid, "formula": str(self.formula), "checked": self.checked}
        if not self.valid:
            B = self.algebra.base
            out.update(
                algebra_index=self.algebra_index,
                assignment={k: B.label(v) for k, v in self.assignment.items()},
                value=B.label(self.value),
            )
        return out


def _first_failure(M: MonadicBLAlgebra, f: Formula, names: list[str]) -> tuple[int, int] | None:
    vals = eval_all(M, f, names)
    bad = np.nonzero(vals != M.top)[0]
    if not len(bad):
        return None
    return int(bad[0]), int(vals[bad[0]])


def _decode(flat: int, size: int, names: list[str]) -> dict[str, int]:
    out = {}
    for x in reversed(names):
        flat, out[x] = divmod(flat, size)
    return {x: out[x] for x in names}


def check_validity(f: Formula | str, family: Sequence[MonadicBLAlgebra], jobs: int = 1) -> ValidityResult:
    """Search for a countermodel, smallest algebra first.

    Ties between algebras of equal size keep the family order; within an
    algebra, assignments are scanned lexicographically. With several
    workers every algebra is checked and the least hit is reported, so the
    answer does not depend on ``jobs``.
    """
    if isinstance(f, str):
        f = parse_formula(f)
    if not family:
        raise InvalidParameter("the family of algebras is empty")
    names = variables(f)
    order = sorted(range(len(family)), key=lambda i: family[i].size)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            hits = list(pool.map(lambda i: _first_failure(family[i], f, names), order))
    else:
        hits = []
        for i in order:
            hits.append(_first_failure(family[i], f, names))
            if hits[-1] is not None:
                break
    for i, hit in zip(order, hits):
        if hit is not None:
            M = family[i]
            return ValidityResult(False, f, len(family), i, M, _decode(hit[0], M.size, names), hit[1])
    return ValidityResult(True, f, len(family))


def _valid_everywhere(f: Formula, family: Sequence[MonadicBLAlgebra]) -> list[tuple[int, ...]]:
    """(algebra index, flat assignment) of every failure, one per algebra."""
    names = variables(f)
    bad = []
    for i, M in enumerate(family):
        hit = _first_failure(M, f, names)
        if hit is not None:
            bad.append((i, hit[0]))
    return bad


def axiom_suite(family: Sequence[MonadicBLAlgebra], max_depth: int = 2, rule_corpus: Sequence[Formula] = ()) -> Report:
    """All bounded instances of both axiomatizations, plus rule preservation.

    A failure is recorded as (instance number, algebra index, flat assignment).
    """
    report = Report("modal axiom instances")
    total = 0
    for schemata in (s5_instances(max_depth), s5_prime_instances(max_depth)):
        for name, insts in schemata.items():
            bad = []
            for j, f in enumerate(insts):
                bad.extend((j, *w) for w in _valid_everywhere(f, family))
            total += len(insts)
            report.record(name, bad)
    report.info["instances"] = total
    if rule_corpus:
        rules = check_rule_preservation(family, rule_corpus)
        for name, vs in rules.laws.items():
            report.record(name, [v.witness for v in vs])
    return report


def check_rule_preservation(family: Sequence[MonadicBLAlgebra], corpus: Sequence[Formula]) -> Report:
    """On each algebra: if f is valid so is []f (Nec); if f and f -> g are
    valid so is g (MP). Witnesses are (algebra index, corpus positions)."""
    report = Report("rule preservation")
    nec, mp = [], []
    corpus = list(corpus)
    for i, M in enumerate(family):
        names = sorted({x for f in corpus for x in variables(f)})
        valid = [bool(np.all(eval_all(M, f, names) == M.top)) for f in corpus]
        for j, f in enumerate(corpus):
            if valid[j] and not np.all(eval_all(M, Box(f), names) == M.top):
                nec.append((i, j))
        for j, k in itertools.product(range(len(corpus)), repeat=2):
            if valid[j] and not valid[k]:
                if np.all(eval_all(M, Imp(corpus[j], corpus[k]), names) == M.top):
                    mp.append((i, j, k))
    report.record("Nec", nec)
    report.record("MP", mp)
    return report


def check_derived_rules(family: Sequence[MonadicBLAlgebra], corpus: Sequence[Formula]) -> Report:
    """Congruence of box and diamond under equivalence, pointwise and as rules,
    plus the theorems <>f <-> []<>f and f -> <>f."""
    report = Report("derived rules")
    corpus = list(corpus)
    names = sorted({x for f in corpus for x in variables(f)})
    box_bad, dia_bad, thm1, thm2 = [], [], [], []
    for i, M in enumerate(family):
        top = M.top
        vals = [eval_all(M, f, names) for f in corpus]
        for j, f in enumerate(corpus):
            if not np.all(eval_all(M, Equiv(Dia(f), Box(Dia(f))), names) == top):
                thm1.append((i, j))
            if not np.all(eval_all(M, Imp(f, Dia(f)), names) == top):
                thm2.append((i, j))
        for j, k in itertools.combinations(range(len(corpus)), 2):
            prem = vals[j] == vals[k]
            if not prem.any():
                continue
            boxes = M.A[vals[j]] == M.A[vals[k]]
            dias = M.E[vals[j]] == M.E[vals[k]]
            if not np.all(boxes[prem]):
                box_bad.append((i, j, k))
            if not np.all(dias[prem]):
                dia_bad.append((i, j, k))
    report.record("f <-> g |- []f <-> []g", box_bad)
    report.record("f <-> g |- <>f <-> <>g", dia_bad)
    report.record("<>f <-> []<>f", thm1)
    report.record("f -> <>f", thm2)
    return report


def check_algebraization(
    family: Sequence[MonadicBLAlgebra], pairs: Iterable[tuple[Formula, Formula]]
) -> Report:
    """f = g exactly when (f -> g) & (g -> f) evaluates to 1."""
    report = Report("equivalence vs equation")
    bad = []
    pairs = list(pairs)
    for j, (f, g) in enumerate(pairs):
        names = sorted(set(variables(f)) | set(variables(g)))
        for i, M in enumerate(family):
            eq = eval_all(M, f, names) == eval_all(M, g, names)
            one = eval_all(M, Equiv(f, g), names) == M.top
            hits = np.nonzero(eq != one)[0]
            if len(hits):
                bad.append((j, i, int(hits[0])))
    report.record("f = g iff f <-> g = 1", bad)
    return report
