"""Quantifiers on finite BL-algebras.

A monadic structure is a pair of unary tables (forall, exists). Valid pairs
correspond one-to-one with m-relatively complete subalgebras, which gives the
fast enumeration route; :func:`brute_force_monadic_structures` is the
independent exhaustive oracle.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from .algebra import (
    OPS,
    FiniteBLAlgebra,
    _grid,
    canonical_key,
    enumerate_subalgebras,
    is_subalgebra,
)
from .report import BoundExceeded, InvalidParameter, PreconditionError, Report, StructuralError


@dataclass(frozen=True)
class QuantifierPair:
    forall: tuple[int, ...]
    exists: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "forall", tuple(int(v) for v in self.forall))
        object.__setattr__(self, "exists", tuple(int(v) for v in self.exists))
        if len(self.forall) != len(self.exists):
            raise StructuralError(
                f"forall has {len(self.forall)} entries but exists has {len(self.exists)}"
            )

    @classmethod
    def identity(cls, n: int) -> "QuantifierPair":
        return cls(tuple(range(n)), tuple(range(n)))

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.forall)

    def key(self) -> tuple:
        return (canonical_key(self.image), self.forall, self.exists)


@dataclass(frozen=True)
class MonadicBLAlgebra:
    base: FiniteBLAlgebra
    q: QuantifierPair

    def __post_init__(self):
        n = self.base.size
        for name in ("forall", "exists"):
            tab = getattr(self.q, name)
            if len(tab) != n:
                raise StructuralError(f"{name} table has {len(tab)} entries, algebra has {n}")
            for i, v in enumerate(tab):
                if not 0 <= v < n:
                    raise StructuralError(f"{name}[{i}] = {v} is outside 0..{n - 1}")

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def top(self) -> int:
        return self.base.top

    @property
    def forall(self) -> tuple[int, ...]:
        return self.q.forall

    @property
    def exists(self) -> tuple[int, ...]:
        return self.q.exists

    @cached_property
    def A(self) -> np.ndarray:
        return np.array(self.q.forall, dtype=np.int64)

    @cached_property
    def E(self) -> np.ndarray:
        return np.array(self.q.exists, dtype=np.int64)

    @property
    def image(self) -> frozenset[int]:
        """The common range of both quantifiers (for valid structures)."""
        return self.q.image

    def label(self, a: int) -> str:
        return self.base.label(a)


# ---------------------------------------------------------------------------
# axioms and derived identities


def _rec(report: Report, name: str, mask: np.ndarray, coords: Sequence[np.ndarray]) -> None:
    mask = np.broadcast_to(mask, coords[0].shape)
    report.record(name, [tuple(int(c[i]) for c in coords) for i in np.nonzero(~mask)[0]])


def check_mbl_axioms(M: MonadicBLAlgebra) -> Report:
    B = M.base
    T, I, J = B.T, B.I, B.J
    A, E = M.A, M.E
    top = B.top
    x1 = np.arange(B.size)
    x, y = _grid(B.size, 2)
    report = Report("MBL axioms", labels=B.labels)
    _rec(report, "M1", I[A[x1], x1] == top, (x1,))
    _rec(report, "M2", A[I[x, A[y]]] == I[E[x], A[y]], (x, y))
    _rec(report, "M3", A[I[A[x], y]] == I[A[x], A[y]], (x, y))
    _rec(report, "M4", A[J[E[x], y]] == J[E[x], A[y]], (x, y))
    _rec(report, "M5", E[T[x1, x1]] == T[E[x1], E[x1]], (x1,))
    return report


def is_monadic(M: MonadicBLAlgebra) -> bool:
    return check_mbl_axioms(M).ok


def _identity_table(B: FiniteBLAlgebra, A: np.ndarray, E: np.ndarray):
    """(name, arity, predicate) triples for M6-M37; ``a``, ``b`` are index grids."""
    T, I, J, M_, LEQ = B.T, B.I, B.J, B.M, B.LEQ
    top = B.top
    return [
        ("M6", 1, lambda a: A[E[a]] == E[a]),
        ("M7", 1, lambda a: I[a, E[a]] == top),
        ("M8", 2, lambda a, b: A[I[E[a], b]] == I[E[a], A[b]]),
        ("M9", 2, lambda a, b: A[I[a, E[b]]] == I[E[a], E[b]]),
        ("M10", 0, lambda: A[top] == top),
        ("M11", 1, lambda a: E[A[a]] == A[a]),
        ("M12", 2, lambda a, b: A[J[A[a], b]] == J[A[a], A[b]]),
        ("M13", 0, lambda: (A[0] == 0) & (E[top] == top) & (E[0] == 0)),
        ("M14", 1, lambda a: (E[E[a]] == E[a]) & (A[A[a]] == A[a])),
        ("M15", 2, lambda a, b: A[I[E[a], E[b]]] == I[E[a], E[b]]),
        ("M16", 2, lambda a, b: I[E[I[E[a], b]], I[E[a], E[b]]] == top),
        ("M17", 2, lambda a, b: ~LEQ[a, b] | (LEQ[A[a], A[b]] & LEQ[E[a], E[b]])),
        ("M18", 2, lambda a, b: A[J[E[a], E[b]]] == J[E[a], E[b]]),
        ("M19", 1, lambda a: (A[a] == a) == (E[a] == a)),
        ("M20", 2, lambda a, b: E[J[a, b]] == J[E[a], E[b]]),
        ("M21", 2, lambda a, b: E[T[E[a], E[b]]] == T[E[a], E[b]]),
        ("M22", 2, lambda a, b: I[A[I[a, b]], I[A[a], A[b]]] == top),
        ("M23", 2, lambda a, b: I[A[I[a, b]], I[E[a], E[b]]] == top),
        ("M24", 2, lambda a, b: I[T[A[a], E[b]], E[T[a, b]]] == top),
        ("M25", 2, lambda a, b: I[T[A[a], A[b]], E[T[a, b]]] == top),
        ("M26", 2, lambda a, b: E[T[a, E[b]]] == T[E[a], E[b]]),
        ("M27", 2, lambda a, b: E[T[a, A[b]]] == T[E[a], A[b]]),
        ("M28", 2, lambda a, b: I[E[I[a, E[b]]], I[A[a], E[b]]] == top),
        ("M29", 2, lambda a, b: E[I[E[a], E[b]]] == I[E[a], E[b]]),
        ("M30", 2, lambda a, b: E[I[A[a], A[b]]] == I[A[a], A[b]]),
        ("M31", 2, lambda a, b: E[M_[E[a], E[b]]] == M_[E[a], E[b]]),
        ("M32", 2, lambda a, b: E[M_[a, E[b]]] == M_[E[a], E[b]]),
        ("M33", 2, lambda a, b: A[I[A[a], A[b]]] == I[A[a], A[b]]),
        ("M34", 2, lambda a, b: E[T[A[a], A[b]]] == T[A[a], A[b]]),
        ("M35", 2, lambda a, b: A[T[A[a], A[b]]] == T[A[a], A[b]]),
        ("M36", 2, lambda a, b: A[M_[A[a], A[b]]] == M_[A[a], A[b]]),
        ("M37", 2, lambda a, b: A[M_[a, b]] == M_[A[a], A[b]]),
    ]


DERIVED_IDENTITIES = tuple(f"M{i}" for i in range(6, 38))


def check_derived_identities(M: MonadicBLAlgebra) -> Report:
    """Exhaustively check M6-M37 (32 properties) on ``M``."""
    B = M.base
    report = Report("derived identities", labels=B.labels)
    grids = {1: (np.arange(B.size),), 2: _grid(B.size, 2)}
    for name, arity, pred in _identity_table(B, M.A, M.E):
        if arity == 0:
            report.record(name, [] if pred() else [()])
            continue
        coords = grids[arity]
        _rec(report, name, pred(*coords), coords)
    return report


def check_image_identities(M: MonadicBLAlgebra) -> Report:
    """Laws with one argument ranging over the quantifier image:
    forall(a->c) = exists a -> c, forall(c->a) = c -> forall a,
    forall(c v a) = c v forall a."""
    B = M.base
    A, E, I, J = M.A, M.E, B.I, B.J
    image = np.array(sorted(M.image), dtype=np.int64)
    a, k = (g.ravel() for g in np.meshgrid(np.arange(B.size), np.arange(len(image)), indexing="ij"))
    c = image[k]
    report = Report("quantifier-image identities", labels=B.labels)
    _rec(report, "forall(a->c) = exists a -> c", A[I[a, c]] == I[E[a], c], (a, c))
    _rec(report, "forall(c->a) = c -> forall a", A[I[c, a]] == I[c, A[a]], (a, c))
    _rec(report, "forall(c v a) = c v forall a", A[J[c, a]] == J[c, A[a]], (a, c))
    return report


# Identities that hold in some MBL-algebras but are not theorems: (arity, law).
NON_THEOREMS: dict[str, tuple[int, Callable]] = {
    "forall(x*x) = forall x * forall x": (1, lambda B, A, x: A[B.T[x, x]] == B.T[A[x], A[x]]),
    "forall(x v y) = forall x v forall y": (
        2,
        lambda B, A, x, y: A[B.J[x, y]] == B.J[A[x], A[y]],
    ),
    "forall(x * forall y) = forall x * forall y": (
        2,
        lambda B, A, x, y: A[B.T[x, A[y]]] == B.T[A[x], A[y]],
    ),
}


def probe_identity(M: MonadicBLAlgebra, name: str) -> Report:
    """Check one of the catalogued identities that are *not* MBL theorems."""
    if name not in NON_THEOREMS:
        raise InvalidParameter(f"unknown identity {name!r}; known: {sorted(NON_THEOREMS)}")
    B = M.base
    arity, law = NON_THEOREMS[name]
    coords = (np.arange(B.size),) if arity == 1 else _grid(B.size, 2)
    report = Report(name, labels=B.labels)
    _rec(report, name, law(B, M.A, *coords), coords)
    return report


# ---------------------------------------------------------------------------
# m-relatively complete subalgebras


@dataclass(frozen=True)
class Completeness:
    """Result of :func:`is_m_relatively_complete`; truthy iff complete."""

    ok: bool
    condition: str | None = None
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _sorted(C: Iterable[int]) -> np.ndarray:
    return np.array(sorted(C), dtype=np.int64)


def _greatest(B: FiniteBLAlgebra, cands: np.ndarray) -> int | None:
    for c in cands:
        if B.LEQ[cands, c].all():
            return int(c)
    return None


def _least(B: FiniteBLAlgebra, cands: np.ndarray) -> int | None:
    for c in cands:
        if B.LEQ[c, cands].all():
            return int(c)
    return None


def check_s1(B: FiniteBLAlgebra, C: Iterable[int]) -> tuple[int, ...] | None:
    """Witness ``(a,)`` where a greatest lower / least upper C-bound is missing."""
    Cs = _sorted(C)
    for a in range(B.size):
        if _greatest(B, Cs[B.LEQ[Cs, a]]) is None or _least(B, Cs[B.LEQ[a, Cs]]) is None:
            return (a,)
    return None


def check_s2(B: FiniteBLAlgebra, C: Iterable[int]) -> tuple[int, ...] | None:
    """c1 <= c2 v a  implies  c1 <= c2 v c3 for some c3 in C below a."""
    Cs = _sorted(C)
    J, LEQ = B.J, B.LEQ
    for a in range(B.size):
        below = Cs[LEQ[Cs, a]]
        for c1 in Cs:
            for c2 in Cs:
                if LEQ[c1, J[c2, a]] and not LEQ[c1, J[c2, below]].any():
                    return (a, int(c1), int(c2))
    return None


def check_s2_prime(B: FiniteBLAlgebra, C: Iterable[int]) -> tuple[int, ...] | None:
    """c1 = c2 v a  implies  c1 = c2 v c3 for some c3 in C below a."""
    Cs = _sorted(C)
    J, LEQ = B.J, B.LEQ
    for a in range(B.size):
        below = Cs[LEQ[Cs, a]]
        for c2 in Cs:
            c1 = J[c2, a]
            if c1 in Cs and not (J[c2, below] == c1).any():
                return (a, int(c1), int(c2))
    return None


def check_s2_double_prime(B: FiniteBLAlgebra, C: Iterable[int]) -> tuple[int, ...] | None:
    """1 = c1 v a  implies  1 = c1 v c2 for some c2 in C below a."""
    Cs = _sorted(C)
    J, LEQ, top = B.J, B.LEQ, B.top
    for a in range(B.size):
        below = Cs[LEQ[Cs, a]]
        for c1 in Cs:
            if J[c1, a] == top and not (J[c1, below] == top).any():
                return (a, int(c1))
    return None


def check_s2_chain(B: FiniteBLAlgebra, C: Iterable[int]) -> tuple[int, ...] | None:
    """Form valid when C is totally ordered: 1 = c v a implies c = 1 or a = 1."""
    top = B.top
    for c in sorted(C):
        for a in range(B.size):
            if B.join[c][a] == top and c != top and a != top:
                return (a, c)
    return None


def check_s3(B: FiniteBLAlgebra, C: Iterable[int]) -> tuple[int, ...] | None:
    """a*a <= c1  implies  a <= c2 and c2*c2 <= c1 for some c2 in C."""
    Cs = _sorted(C)
    T, LEQ = B.T, B.LEQ
    for a in range(B.size):
        above = Cs[LEQ[a, Cs]]
        for c1 in Cs:
            if LEQ[T[a, a], c1] and not LEQ[T[above, above], c1].any():
                return (a, int(c1))
    return None


def _is_chain_subset(B: FiniteBLAlgebra, C: Iterable[int]) -> bool:
    Cs = _sorted(C)
    sub = B.LEQ[np.ix_(Cs, Cs)]
    return bool((sub | sub.T).all())


def is_m_relatively_complete(A: FiniteBLAlgebra, C: Iterable[int]) -> Completeness:
    C = frozenset(C)
    if not is_subalgebra(A, C):
        raise PreconditionError(f"{sorted(C)} is not a subalgebra", witness=tuple(sorted(C)))
    w = check_s1(A, C)
    if w is not None:
        return Completeness(False, "s1", w)
    w = check_s2_chain(A, C) if _is_chain_subset(A, C) else check_s2(A, C)
    if w is not None:
        return Completeness(False, "s2", w)
    w = check_s3(A, C)
    if w is not None:
        return Completeness(False, "s3", w)
    return Completeness(True)


def quantifiers_from_subalgebra(A: FiniteBLAlgebra, C: Iterable[int]) -> QuantifierPair:
    """forall a = max of C below a, exists a = min of C above a."""
    C = frozenset(C)
    result = is_m_relatively_complete(A, C)
    if not result:
        raise PreconditionError(
            f"{sorted(C)} is not m-relatively complete ({result.condition} fails)",
            witness=result.witness,
        )
    Cs = _sorted(C)
    forall = [_greatest(A, Cs[A.LEQ[Cs, a]]) for a in range(A.size)]
    exists = [_least(A, Cs[A.LEQ[a, Cs]]) for a in range(A.size)]
    return QuantifierPair(forall, exists)


def m_relatively_complete_subalgebras(A: FiniteBLAlgebra) -> list[frozenset[int]]:
    return [C for C in enumerate_subalgebras(A) if is_m_relatively_complete(A, C)]


def enumerate_monadic_structures(A: FiniteBLAlgebra) -> list[QuantifierPair]:
    """All monadic structures on ``A``, one per m-relatively complete subalgebra."""
    pairs = [quantifiers_from_subalgebra(A, C) for C in m_relatively_complete_subalgebras(A)]
    return sorted(pairs, key=QuantifierPair.key)


# ---------------------------------------------------------------------------
# brute-force oracle


DEFAULT_BRUTE_BOUND = 6


def _closure_operators(A: FiniteBLAlgebra, deflationary: bool) -> list[tuple[int, ...]]:
    """Idempotent monotone maps with f(a) <= a (or >= a when not deflationary)."""
    LEQ = A.LEQ
    n = A.size
    choices = [
        [b for b in range(n) if (LEQ[b, a] if deflationary else LEQ[a, b])] for a in range(n)
    ]
    out = []

    def extend(prefix: list[int]) -> None:
        k = len(prefix)
        if k == n:
            if all(prefix[prefix[a]] == prefix[a] for a in range(n)):
                out.append(tuple(prefix))
            return
        for b in choices[k]:
            ok = True
            for a in range(k):
                if (LEQ[a, k] and not LEQ[prefix[a], b]) or (LEQ[k, a] and not LEQ[b, prefix[a]]):
                    ok = False
                    break
            if ok:
                prefix.append(b)
                extend(prefix)
                prefix.pop()

    extend([])
    return out


def brute_force_monadic_structures(
    A: FiniteBLAlgebra, bound: int = DEFAULT_BRUTE_BOUND, jobs: int = 1
) -> list[QuantifierPair]:
    """Search all pairs of unary tables, keeping those that satisfy M1-M5.

    Candidates are pruned to idempotent monotone maps with
    forall a <= a <= exists a; all three properties follow from the axioms.
    """
    if A.size > bound:
        raise BoundExceeded(
            f"brute force is exponential; size {A.size} exceeds the bound {bound}",
            witness=(A.size, bound),
        )
    foralls = _closure_operators(A, deflationary=True)
    exists = _closure_operators(A, deflationary=False)

    def shard(fs: Sequence[tuple[int, ...]]) -> list[QuantifierPair]:
        found = []
        for f in fs:
            for e in exists:
                pair = QuantifierPair(f, e)
                if check_mbl_axioms(MonadicBLAlgebra(A, pair)).ok:
                    found.append(pair)
        return found

    if jobs > 1 and len(foralls) > 1:
        chunks = [foralls[i::jobs] for i in range(jobs)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = [p for part in pool.map(shard, chunks) for p in part]
    else:
        results = shard(foralls)
    return sorted(results, key=QuantifierPair.key)


def search_m4_independence(A: FiniteBLAlgebra, bound: int = 4) -> list[QuantifierPair]:
    """Quantifier pairs satisfying M1, M2, M3, M5 but violating M4.

    Monotonicity and idempotence are consequences of M4 together with the
    other axioms, so they cannot be used for pruning here; only M1
    (forall a <= a) restricts the candidates. An empty result proves nothing.
    """
    if A.size > bound:
        raise BoundExceeded(f"size {A.size} exceeds the bound {bound}", witness=(A.size, bound))
    n = A.size
    LEQ = A.LEQ
    foralls = itertools.product(*([b for b in range(n) if LEQ[b, a]] for a in range(n)))
    foralls = list(foralls)
    found = []
    for e in itertools.product(range(n), repeat=n):
        for f in foralls:
            rep = check_mbl_axioms(MonadicBLAlgebra(A, QuantifierPair(f, e)))
            if rep.failed_laws == ["M4"]:
                found.append(QuantifierPair(f, e))
    return sorted(found, key=QuantifierPair.key)


# ---------------------------------------------------------------------------
# functional monadic algebras


@dataclass(frozen=True)
class FunctionalMBL(MonadicBLAlgebra):
    """A subalgebra of chain^X with pointwise operations and constant-valued
    inf/sup quantifiers. ``points[i]`` is the function (tuple over worlds)
    represented by element ``i``."""

    chain: FiniteBLAlgebra = field(default=None, compare=False)
    points: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {p: i for i, p in enumerate(self.points)}

    def index_of(self, point: Sequence[int]) -> int:
        return self._index[tuple(point)]

    @property
    def worlds(self) -> int:
        return len(self.points[0])


def build_functional(
    A: FiniteBLAlgebra,
    X_size: int,
    generators: Iterable[Sequence[int]] | None = None,
) -> FunctionalMBL:
    """Functional monadic algebra over the chain ``A`` and ``X_size`` worlds.

    Without generators the carrier is all of A^X. With generators it is their
    closure together with the constant 0 and 1 maps under the pointwise
    operations and both quantifiers.
    """
    if not A.is_chain:
        raise PreconditionError(
            "functional algebras need a chain: for non-chains the constant maps "
            "need not form an m-relatively complete subalgebra"
        )
    if X_size < 1:
        raise InvalidParameter(f"need at least one world, got {X_size}")
    worlds = range(X_size)

    def inf(f):
        return A.meet_all(f)

    def sup(f):
        return A.join_all(f)

    def const(v):
        return (v,) * X_size

    tabs = [getattr(A, name) for name in OPS]
    if generators is None:
        points = list(itertools.product(range(A.size), repeat=X_size))
    else:
        gens = {tuple(int(v) for v in g) for g in generators}
        for g in gens:
            if len(g) != X_size or not all(0 <= v < A.size for v in g):
                raise InvalidParameter(f"generator {g} is not a map from {X_size} worlds into A")
        found = gens | {const(0), const(A.top)}
        frontier = set(found)
        while frontier:
            new = set()
            for f in frontier:
                new.add(const(inf(f)))
                new.add(const(sup(f)))
                for g in found:
                    for t in tabs:
                        new.add(tuple(t[f[w]][g[w]] for w in worlds))
                        new.add(tuple(t[g[w]][f[w]] for w in worlds))
            frontier = new - found
            found |= frontier
        points = sorted(found)
    pos = {p: i for i, p in enumerate(points)}

    def table(t):
        return [[pos[tuple(t[f[w]][g[w]] for w in worlds)] for g in points] for f in points]

    labels = ["(" + ",".join(A.label(v) for v in p) + ")" for p in points]
    base = FiniteBLAlgebra(*(table(t) for t in tabs), labels=labels)
    q = QuantifierPair([pos[const(inf(f))] for f in points], [pos[const(sup(f))] for f in points])
    return FunctionalMBL(base, q, chain=A, points=tuple(points))


def constant_elements(F: FunctionalMBL) -> frozenset[int]:
    return frozenset(i for i, p in enumerate(F.points) if len(set(p)) == 1)
