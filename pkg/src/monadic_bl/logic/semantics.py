"""Algebraic and Kripke evaluation of formulas."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..algebra import FiniteBLAlgebra
from ..monadic import FunctionalMBL, MonadicBLAlgebra, build_functional
from ..report import InvalidParameter, PreconditionError
from .formula import And, Box, Const0, Const1, Dia, Formula, Fuse, Imp, Or, Var, variables

_BIN = {And: "M", Or: "J", Fuse: "T", Imp: "I"}


def _resolve(M: MonadicBLAlgebra, value) -> int:
    if isinstance(value, str):
        return M.base.element(value)
    v = int(value)
    if not 0 <= v < M.size:
        raise InvalidParameter(f"element {v} out of range for size {M.size}")
    return v


def eval_algebraic(M: MonadicBLAlgebra, f: Formula, v: Mapping[str, int | str]) -> int:
    """Value of ``f`` with box as forall and diamond as exists."""
    missing = [x for x in variables(f) if x not in v]
    if missing:
        raise InvalidParameter(f"no value given for {', '.join(missing)}")
    env = {x: np.array([_resolve(M, v[x])]) for x in variables(f)}
    return int(_eval_vec(M, f, env, 1)[0])


def _eval_vec(M: MonadicBLAlgebra, f: Formula, env: dict[str, np.ndarray], width: int) -> np.ndarray:
    cache: dict[Formula, np.ndarray] = {}
    B = M.base

    def go(g: Formula) -> np.ndarray:
        hit = cache.get(g)
        if hit is not None:
            return hit
        if isinstance(g, Var):
            out = env[g.name]
        elif isinstance(g, Const0):
            out = np.zeros(width, dtype=np.int64)
        elif isinstance(g, Const1):
            out = np.full(width, B.top, dtype=np.int64)
        elif isinstance(g, Box):
            out = M.A[go(g.sub)]
        elif isinstance(g, Dia):
            out = M.E[go(g.sub)]
        else:
            out = getattr(B, _BIN[type(g)])[go(g.left), go(g.right)]
        cache[g] = out
        return out

    return go(f)


def assignment_grid(size: int, names: Sequence[str]) -> dict[str, np.ndarray]:
    """Every assignment of ``names`` into 0..size-1, in lexicographic order
    with the first name most significant."""
    k = len(names)
    if k == 0:
        return {}
    grids = np.indices((size,) * k).reshape(k, -1)
    return {x: grids[i] for i, x in enumerate(names)}


def eval_all(M: MonadicBLAlgebra, f: Formula, names: Sequence[str] | None = None) -> np.ndarray:
    """Values of ``f`` under all assignments (see :func:`assignment_grid`)."""
    names = list(names) if names is not None else variables(f)
    missing = set(variables(f)) - set(names)
    if missing:
        raise InvalidParameter(f"variables {sorted(missing)} not among {names}")
    width = M.size ** len(names)
    return _eval_vec(M, f, assignment_grid(M.size, names), width)


def is_valid_in(M: MonadicBLAlgebra, f: Formula) -> bool:
    return bool(np.all(eval_all(M, f) == M.top))


# ---------------------------------------------------------------------------
# Kripke models


@dataclass(frozen=True)
class KripkeModel:
    worlds: int
    chain: FiniteBLAlgebra
    eval: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.worlds < 1:
            raise InvalidParameter("a Kripke model needs at least one world")
        if not self.chain.is_chain:
            raise PreconditionError("the value algebra of a Kripke model must be a chain")
        fixed = {}
        for name, vals in self.eval.items():
            vals = tuple(int(self.chain.element(v)) if isinstance(v, str) else int(v) for v in vals)
            if len(vals) != self.worlds:
                raise InvalidParameter(f"{name}: expected {self.worlds} values, got {len(vals)}")
            if not all(0 <= v < self.chain.size for v in vals):
                raise InvalidParameter(f"{name}: value out of range")
            fixed[name] = vals
        object.__setattr__(self, "eval", fixed)


def eval_kripke(K: KripkeModel, f: Formula, x: int) -> int:
    if not 0 <= x < K.worlds:
        raise InvalidParameter(f"world {x} out of range")
    return eval_kripke_worlds(K, f)[x]


def eval_kripke_worlds(K: KripkeModel, f: Formula) -> tuple[int, ...]:
    """Value of ``f`` at every world; box and diamond are inf and sup over X."""
    A = K.chain
    X = range(K.worlds)
    missing = [v for v in variables(f) if v not in K.eval]
    if missing:
        raise InvalidParameter(f"no valuation for {', '.join(missing)}")

    def go(g: Formula) -> list[int]:
        if isinstance(g, Var):
            return list(K.eval[g.name])
        if isinstance(g, Const0):
            return [0 for _ in X]
        if isinstance(g, Const1):
            return [A.top for _ in X]
        if isinstance(g, Box):
            vals = go(g.sub)
            return [reduce(lambda a, b: A.meet[a][b], vals)] * K.worlds
        if isinstance(g, Dia):
            vals = go(g.sub)
            return [reduce(lambda a, b: A.join[a][b], vals)] * K.worlds
        tab = {And: A.meet, Or: A.join, Fuse: A.mul, Imp: A.imp}[type(g)]
        left, right = go(g.left), go(g.right)
        return [tab[a][b] for a, b in zip(left, right)]

    return tuple(go(f))


def kripke_satisfies(K: KripkeModel, f: Formula) -> bool:
    return all(v == K.chain.top for v in eval_kripke_worlds(K, f))


def kripke_to_functional(K: KripkeModel) -> tuple[FunctionalMBL, dict[str, int]]:
    """The functional algebra generated by the valuation maps, and each
    variable's element in it."""
    names = sorted(K.eval)
    F = build_functional(K.chain, K.worlds, [K.eval[p] for p in names])
    return F, {p: F.index_of(K.eval[p]) for p in names}


def check_kripke_agreement(K: KripkeModel, formulas: Iterable[Formula]) -> list[tuple[Formula, int]]:
    """(formula, world) pairs where Kripke and functional evaluation differ."""
    F, v = kripke_to_functional(K)
    bad = []
    for f in formulas:
        point = F.points[eval_algebraic(F, f, v)]
        kv = eval_kripke_worlds(K, f)
        bad.extend((f, x) for x in range(K.worlds) if point[x] != kv[x])
    return bad


def kripke_batch(chain: FiniteBLAlgebra, worlds: int, f: Formula, names: Sequence[str]) -> np.ndarray:
    """Kripke values for every valuation at once, shape (valuations, worlds).

    Valuations enumerate the maps names x worlds -> chain with the first name
    most significant and, within a name, the first world most significant;
    this matches :func:`assignment_grid` over the full power A^X whose
    elements are ordered lexicographically.
    """
    n = chain.size
    J, Mt, T, I = chain.J, chain.M, chain.T, chain.I
    k = len(names)
    total = n ** (k * worlds)
    digits = np.indices((n,) * (k * worlds)).reshape(k * worlds, total) if k else np.zeros((0, 1), int)
    env = {p: digits[i * worlds : (i + 1) * worlds].T for i, p in enumerate(names)}
    shape = (max(total, 1), worlds)

    def go(g: Formula) -> np.ndarray:
        if isinstance(g, Var):
            return env[g.name]
        if isinstance(g, Const0):
            return np.zeros(shape, dtype=np.int64)
        if isinstance(g, Const1):
            return np.full(shape, chain.top, dtype=np.int64)
        if isinstance(g, (Box, Dia)):
            vals = go(g.sub)
            tab = Mt if isinstance(g, Box) else J
            acc = vals[:, 0]
            for w in range(1, worlds):
                acc = tab[acc, vals[:, w]]
            return np.repeat(acc[:, None], worlds, axis=1)
        tab = {And: Mt, Or: J, Fuse: T, Imp: I}[type(g)]
        return tab[go(g.left), go(g.right)]

    return go(f)


def functional_batch(F: FunctionalMBL, f: Formula, names: Sequence[str]) -> np.ndarray:
    """Algebraic values in a full power A^X for every assignment, unpacked to
    per-world coordinates; same layout as :func:`kripke_batch`."""
    vals = eval_all(F, f, names)
    pts = np.asarray(F.points, dtype=np.int64)
    return pts[vals]
