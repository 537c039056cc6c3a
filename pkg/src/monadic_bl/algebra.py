"""Finite BL-algebras given by operation tables.

Elements are the integers ``0..n-1``; ``0`` is the bottom and ``n-1`` the top.
The order is never stored: ``a <= b`` iff ``meet[a][b] == a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .report import InvalidParameter, Report, StructuralError

OPS = ("join", "meet", "mul", "imp")


def _freeze(name: str, table, n: int) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) for x in row) for row in table)
    if len(rows) != n:
        raise StructuralError(f"{name} has {len(rows)} rows, expected {n}")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise StructuralError(f"{name}[{i}] has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise StructuralError(f"{name}[{i}][{j}] = {v} is outside 0..{n - 1}")
    return rows


@dataclass(frozen=True)
class FiniteBLAlgebra:
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    imp: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.join)
        if n < 1:
            raise StructuralError("an algebra needs at least one element")
        for name in OPS:
            object.__setattr__(self, name, _freeze(name, getattr(self, name), n))
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n:
                raise StructuralError(f"{len(labels)} labels for {n} elements")
            object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return len(self.join)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.size - 1

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    @property
    def names(self) -> tuple[str, ...]:
        return self.labels if self.labels is not None else tuple(str(i) for i in range(self.size))

    def element(self, name: str | int) -> int:
        """Resolve a label (or a plain index) to an element index."""
        if isinstance(name, int):
            return name
        if name in self.names:
            return self.names.index(name)
        if name.lstrip("-").isdigit() and 0 <= int(name) < self.size:
            return int(name)
        raise InvalidParameter(f"unknown element {name!r}; known: {', '.join(self.names)}")

    # numpy views, used by all vectorized checks
    @cached_property
    def J(self) -> np.ndarray:
        return np.array(self.join, dtype=np.int64)

    @cached_property
    def M(self) -> np.ndarray:
        return np.array(self.meet, dtype=np.int64)

    @cached_property
    def T(self) -> np.ndarray:
        return np.array(self.mul, dtype=np.int64)

    @cached_property
    def I(self) -> np.ndarray:
        return np.array(self.imp, dtype=np.int64)

    @cached_property
    def N(self) -> np.ndarray:
        """Negation table, ``a -> 0``."""
        return self.I[:, 0].copy()

    @cached_property
    def LEQ(self) -> np.ndarray:
        idx = np.arange(self.size)
        return self.M == idx[:, None]

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    def neg(self, a: int) -> int:
        return self.imp[a][0]

    def oplus(self, a: int, b: int) -> int:
        return self.imp[self.neg(a)][b]

    @cached_property
    def is_chain(self) -> bool:
        return bool(np.all(self.LEQ | self.LEQ.T))

    def meet_all(self, elems: Iterable[int]) -> int:
        acc = self.top
        for e in elems:
            acc = self.meet[acc][e]
        return acc

    def join_all(self, elems: Iterable[int]) -> int:
        acc = self.bottom
        for e in elems:
            acc = self.join[acc][e]
        return acc

    def restrict(self, subset: Iterable[int]) -> "FiniteBLAlgebra":
        """The subalgebra on ``subset`` with elements renumbered in index order."""
        elems = sorted(set(subset))
        pos = {e: i for i, e in enumerate(elems)}
        try:
            tables = {
                name: [[pos[getattr(self, name)[a][b]] for b in elems] for a in elems]
                for name in OPS
            }
        except KeyError as exc:
            raise InvalidParameter(f"subset {elems} is not closed (produces {exc.args[0]})") from None
        return FiniteBLAlgebra(labels=[self.label(e) for e in elems], **tables)

    def hasse_covers(self) -> list[tuple[int, int]]:
        lt = self.LEQ & ~np.eye(self.size, dtype=bool)
        covers = []
        for a, b in zip(*np.nonzero(lt)):
            between = lt[a] & lt[:, b]
            if not between.any():
                covers.append((int(a), int(b)))
        return sorted(covers)


@dataclass(frozen=True)
class OrdinalSumSpec:
    """Ordinal sum of finite MV-chains, listed bottom-most first."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(k) for k in self.blocks)
        if not blocks:
            raise InvalidParameter("an ordinal sum needs at least one block")
        bad = [k for k in blocks if k < 2]
        if bad:
            raise InvalidParameter(f"block sizes must be >= 2, got {bad}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def size(self) -> int:
        return sum(k - 1 for k in self.blocks) + 1


def _frac_label(i: int, k: int) -> str:
    return str(Fraction(i, k - 1))


def _from_functions(n, join, meet, mul, imp, labels=None) -> FiniteBLAlgebra:
    r = range(n)
    return FiniteBLAlgebra(
        join=[[join(a, b) for b in r] for a in r],
        meet=[[meet(a, b) for b in r] for a in r],
        mul=[[mul(a, b) for b in r] for a in r],
        imp=[[imp(a, b) for b in r] for a in r],
        labels=labels,
    )


def make_mv_chain(k: int) -> FiniteBLAlgebra:
    """The Lukasiewicz chain with ``k`` elements ``0, 1/(k-1), ..., 1``."""
    if k < 2:
        raise InvalidParameter(f"an MV-chain needs k >= 2, got {k}")
    t = k - 1
    return _from_functions(
        k,
        max,
        min,
        lambda a, b: max(0, a + b - t),
        lambda a, b: min(t, t - a + b),
        [_frac_label(i, k) for i in range(k)],
    )


def make_godel_chain(k: int) -> FiniteBLAlgebra:
    if k < 2:
        raise InvalidParameter(f"a Godel chain needs k >= 2, got {k}")
    t = k - 1
    return _from_functions(
        k, max, min, min, lambda a, b: t if a <= b else b, [_frac_label(i, k) for i in range(k)]
    )


def _ordinal_sum_labels(blocks: Sequence[int]) -> list[str]:
    if len(blocks) == 1:
        return [_frac_label(i, blocks[0]) for i in range(blocks[0])]
    raw = [(i, _frac_label(a, k)) for i, k in enumerate(blocks) for a in range(k - 1)]
    counts: dict[str, int] = {}
    for _, s in raw:
        counts[s] = counts.get(s, 0) + 1
    labels = [s if (s != "0" and counts[s] == 1) else f"{s}_{i + 1}" for i, s in raw]
    return labels + ["1"]


def ordinal_sum(spec: OrdinalSumSpec | Sequence[int]) -> FiniteBLAlgebra:
    """Stack finite MV-chains; every component top is merged into the global top."""
    if not isinstance(spec, OrdinalSumSpec):
        spec = OrdinalSumSpec(tuple(spec))
    blocks = spec.blocks
    r = len(blocks)
    # (block, position); the global top is (r, 0)
    elems = [(i, a) for i, k in enumerate(blocks) for a in range(k - 1)] + [(r, 0)]
    pos = {e: n for n, e in enumerate(elems)}
    top = pos[(r, 0)]

    def le(x, y):
        return x <= y  # lexicographic on (block, position)

    def mul(x, y):
        (i, a), (j, b) = elems[x], elems[y]
        if i < j:
            return x
        if i > j or i == r:
            return y
        t = blocks[i] - 1
        return pos[(i, max(0, a + b - t))]

    def imp(x, y):
        (i, a), (j, b) = elems[x], elems[y]
        if le(elems[x], elems[y]):
            return top
        if i == j:
            t = blocks[i] - 1
            return pos[(i, t - a + b)]
        return y

    return _from_functions(len(elems), max, min, mul, imp, _ordinal_sum_labels(blocks))


def stack(lower: FiniteBLAlgebra, upper: FiniteBLAlgebra) -> FiniteBLAlgebra:
    """Ordinal sum of a BL-chain below an arbitrary finite BL-algebra.

    The top of ``lower`` is identified with the top of ``upper``. Elements of
    ``lower`` keep their indices, those of ``upper`` are shifted above them.
    """
    if not lower.is_chain:
        raise InvalidParameter("the lower summand of an ordinal sum must be a chain")
    lo = lower.size - 1
    n = lo + upper.size

    def side(x):
        return (0, x) if x < lo else (1, x - lo)

    def back(s, v):
        if s == 0:
            return lo + upper.top if v == lower.top else v
        return lo + v

    def table(name):
        lt, ut = getattr(lower, name), getattr(upper, name)
        out = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                (sx, a), (sy, b) = side(x), side(y)
                if sx == sy == 0:
                    out[x][y] = back(0, lt[a][b])
                elif sx == sy == 1:
                    out[x][y] = back(1, ut[a][b])
                elif name in ("meet", "mul"):
                    out[x][y] = x if sx == 0 else y
                elif name == "join":
                    out[x][y] = y if sx == 0 else x
                else:  # imp
                    out[x][y] = n - 1 if sx == 0 else y
        return out

    labels = [lower.label(i) for i in range(lo)] + [upper.label(i) for i in range(upper.size)]
    return FiniteBLAlgebra(*(table(name) for name in OPS), labels=labels)


def direct_product(*factors: FiniteBLAlgebra) -> FiniteBLAlgebra:
    """Direct product with elements in lexicographic order of coordinates."""
    if not factors:
        raise InvalidParameter("direct_product needs at least one factor")
    points = list(itertools.product(*(range(f.size) for f in factors)))
    pos = {p: i for i, p in enumerate(points)}

    def table(name):
        tabs = [getattr(f, name) for f in factors]
        return [
            [pos[tuple(t[a][b] for t, a, b in zip(tabs, p, q))] for q in points] for p in points
        ]

    labels = ["(" + ",".join(f.label(c) for f, c in zip(factors, p)) + ")" for p in points]
    return FiniteBLAlgebra(*(table(name) for name in OPS), labels=labels)


def heyting_algebra(leq: Sequence[Sequence[bool]], labels: Sequence[str] | None = None) -> FiniteBLAlgebra:
    """Heyting algebra of a finite lattice given by its order matrix.

    ``mul`` is set to the meet, so the result is a BL-algebra exactly when the
    lattice is distributive and prelinear. Index 0 must be the least element
    and the last index the greatest.
    """
    le = np.array(leq, dtype=bool)
    n = le.shape[0]
    if le.shape != (n, n):
        raise StructuralError("order matrix must be square")
    if not (le[0].all() and le[:, n - 1].all()):
        raise InvalidParameter("index 0 must be the bottom and the last index the top")

    def extremum(cands, least):
        for c in cands:
            if all((le[c, d] if least else le[d, c]) for d in cands):
                return c
        raise InvalidParameter("order is not a lattice")

    meet = [[extremum([c for c in range(n) if le[c, a] and le[c, b]], False) for b in range(n)] for a in range(n)]
    join = [[extremum([c for c in range(n) if le[a, c] and le[b, c]], True) for b in range(n)] for a in range(n)]
    imp = [
        [extremum([x for x in range(n) if le[meet[x][a], b]], False) for b in range(n)]
        for a in range(n)
    ]
    return FiniteBLAlgebra(join, meet, meet, imp, labels=labels)


def trivial_algebra() -> FiniteBLAlgebra:
    return FiniteBLAlgebra([[0]], [[0]], [[0]], [[0]], labels=["0=1"])


# ---------------------------------------------------------------------------
# verification


def _grid(n: int, k: int) -> tuple[np.ndarray, ...]:
    return tuple(np.indices((n,) * k).reshape(k, -1))


def check_lattice_laws(A: FiniteBLAlgebra, report: Report) -> None:
    n = A.size
    J, M = A.J, A.M
    x = np.arange(n)
    a, b = _grid(n, 2)
    p, q, r = _grid(n, 3)

    def rec(name, mask, coords):
        report.record(name, [tuple(int(c[i]) for c in coords) for i in np.nonzero(~mask)[0]])

    rec("join idempotent", J[x, x] == x, (x,))
    rec("meet idempotent", M[x, x] == x, (x,))
    rec("join commutative", J[a, b] == J[b, a], (a, b))
    rec("meet commutative", M[a, b] == M[b, a], (a, b))
    rec("join associative", J[J[p, q], r] == J[p, J[q, r]], (p, q, r))
    rec("meet associative", M[M[p, q], r] == M[p, M[q, r]], (p, q, r))
    rec("absorption", (J[a, M[a, b]] == a) & (M[a, J[a, b]] == a), (a, b))
    rec("distributive", M[p, J[q, r]] == J[M[p, q], M[p, r]], (p, q, r))
    rec("bottom is least", M[0, x] == 0, (x,))
    rec("top is greatest", J[A.top, x] == A.top, (x,))


def check_bl_axioms(A: FiniteBLAlgebra) -> Report:
    """Check every BL-algebra axiom at every tuple; failures are listed in full."""
    report = Report("BL axioms", labels=A.labels)
    n, top = A.size, A.top
    T, I, J, M, LEQ = A.T, A.I, A.J, A.M, A.LEQ
    x = np.arange(n)
    a, b = _grid(n, 2)
    p, q, r = _grid(n, 3)

    def rec(name, mask, coords):
        report.record(name, [tuple(int(c[i]) for c in coords) for i in np.nonzero(~mask)[0]])

    check_lattice_laws(A, report)
    rec("mul commutative", T[a, b] == T[b, a], (a, b))
    rec("mul associative", T[T[p, q], r] == T[p, T[q, r]], (p, q, r))
    rec("mul unit", T[x, top] == x, (x,))
    rec("residuation", LEQ[T[p, q], r] == LEQ[p, I[q, r]], (p, q, r))
    rec("divisibility", M[a, b] == T[a, I[a, b]], (a, b))
    rec("prelinearity", J[I[a, b], I[b, a]] == top, (a, b))
    return report


def is_bl_algebra(A: FiniteBLAlgebra) -> bool:
    return check_bl_axioms(A).ok


@dataclass(frozen=True)
class Classification:
    chain: bool
    mv: bool
    godel: bool
    product: bool

    def flags(self) -> set[str]:
        return {name for name in ("chain", "mv", "godel", "product") if getattr(self, name)}


def satisfies_p1(A: FiniteBLAlgebra) -> bool:
    """``~~z -> ((x*z -> y*z) -> (x -> y)) = 1`` for all x, y, z."""
    T, I, N = A.T, A.I, A.N
    x, y, z = _grid(A.size, 3)
    return bool(np.all(I[N[N[z]], I[I[T[x, z], T[y, z]], I[x, y]]] == A.top))


def satisfies_p2(A: FiniteBLAlgebra) -> bool:
    x = np.arange(A.size)
    return bool(np.all(A.M[x, A.N[x]] == 0))


def classify(A: FiniteBLAlgebra) -> Classification:
    x = np.arange(A.size)
    return Classification(
        chain=A.is_chain,
        mv=bool(np.all(A.N[A.N] == x)),
        godel=bool(np.all(A.T[x, x] == x)),
        product=satisfies_p1(A) and satisfies_p2(A),
    )


# ---------------------------------------------------------------------------
# subalgebras


def closure(
    A: FiniteBLAlgebra,
    generators: Iterable[int],
    unary: Sequence[Sequence[int]] = (),
) -> frozenset[int]:
    """Smallest subset containing the generators and both bounds, closed under
    the four binary operations and any extra unary tables."""
    inside = np.zeros(A.size, dtype=bool)
    inside[[0, A.top, *generators]] = True
    tabs = (A.J, A.M, A.T, A.I)
    unary = [np.asarray(u, dtype=np.int64) for u in unary]
    while True:
        idx = np.nonzero(inside)[0]
        grown = inside.copy()
        for t in tabs:
            grown[t[np.ix_(idx, idx)].ravel()] = True
        for u in unary:
            grown[u[idx]] = True
        if (grown == inside).all():
            return frozenset(int(i) for i in idx)
        inside = grown


def canonical_key(subset: Iterable[int]) -> tuple:
    s = sorted(subset)
    return (len(s), s)


def is_subalgebra(A: FiniteBLAlgebra, subset: Iterable[int]) -> bool:
    s = frozenset(subset)
    return {0, A.top} <= s and closure(A, s) == s


def enumerate_subalgebras(A: FiniteBLAlgebra, unary: Sequence[Sequence[int]] = ()) -> list[frozenset[int]]:
    """All subalgebras, sorted by size then lexicographically.

    Every subalgebra arises by adding one element at a time to the least
    subalgebra, so a search over single-element extensions is complete.
    """
    start = closure(A, (), unary)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for e in range(A.size):
                if e not in s:
                    t = closure(A, s | {e}, unary)
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(seen, key=canonical_key)
