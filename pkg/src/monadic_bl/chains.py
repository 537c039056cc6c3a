"""Monadic BL-chains as ordinal sums indexed by a monadic Heyting chain.

A finite monadic BL-chain is determined by the sizes of its MV-blocks and by
the set S of block indices fixed by the quantifiers. The index chain is
0..r where r = len(blocks) stands for the trivial top component {1}; S must
contain 0 and r.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import FiniteBLAlgebra, OrdinalSumSpec, _grid, ordinal_sum
from .monadic import (
    DEFAULT_BRUTE_BOUND,
    MonadicBLAlgebra,
    QuantifierPair,
    brute_force_monadic_structures,
    check_mbl_axioms,
    enumerate_monadic_structures,
)
from .report import BoundExceeded, InternalError, InvalidParameter, PreconditionError, Report


@dataclass(frozen=True)
class IndexChainSpec:
    blocks: tuple[int, ...]
    fixed: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(OrdinalSumSpec(list(self.blocks)).blocks))
        object.__setattr__(self, "fixed", frozenset(int(i) for i in self.fixed))
        r = len(self.blocks)
        if 0 not in self.fixed or r not in self.fixed:
            raise InvalidParameter(f"fixed set must contain 0 and {r}, got {sorted(self.fixed)}")
        if not self.fixed <= set(range(r + 1)):
            raise InvalidParameter(f"fixed set must lie in 0..{r}, got {sorted(self.fixed)}")

    @property
    def r(self) -> int:
        return len(self.blocks)

    def index_forall(self, i: int) -> int:
        return max(s for s in self.fixed if s <= i)

    def index_exists(self, i: int) -> int:
        return min(s for s in self.fixed if s >= i)

    def to_dict(self) -> dict:
        return {"blocks": list(self.blocks), "fixed": sorted(self.fixed)}

    @classmethod
    def from_dict(cls, d: dict) -> "IndexChainSpec":
        return cls(tuple(d["blocks"]), frozenset(d["fixed"]))


def _positions(blocks: Sequence[int]) -> list[tuple[int, int]]:
    """(block, position) for every element in index order; the top is (r, 0)."""
    out = [(i, p) for i, k in enumerate(blocks) for p in range(k - 1)]
    out.append((len(blocks), 0))
    return out


def build_chain(spec: IndexChainSpec) -> MonadicBLAlgebra:
    base = ordinal_sum(list(spec.blocks))
    pos = _positions(spec.blocks)
    index = {p: e for e, p in enumerate(pos)}
    r = spec.r

    def least(i):  # 0_i
        return index[(i, 0)]

    def greatest(i):  # u_i
        return index[(i, spec.blocks[i] - 2)] if i < r else index[(r, 0)]

    forall, exists = [], []
    for e, (i, _) in enumerate(pos):
        if i in spec.fixed:
            forall.append(e)
            exists.append(e)
        else:
            forall.append(greatest(spec.index_forall(i)))
            exists.append(least(spec.index_exists(i)))
    return MonadicBLAlgebra(base, QuantifierPair(forall, exists))


@dataclass
class Decomposition:
    spec: IndexChainSpec
    psi: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {**self.spec.to_dict(), "psi": list(self.psi)}


def _f_sets(B: FiniteBLAlgebra) -> list[frozenset[int]]:
    I = B.I
    return [frozenset(x for x in range(B.size) if x != B.top and I[a, x] == x) for a in range(B.size)]


def _is_iso(M: MonadicBLAlgebra, N: MonadicBLAlgebra, h: Sequence[int]) -> bool:
    if sorted(h) != list(range(N.size)):
        return False
    h = np.asarray(h)
    x, y = _grid(M.size, 2)
    for name in ("J", "M", "T", "I"):
        if not np.array_equal(h[getattr(M.base, name)[x, y]], getattr(N.base, name)[h[x], h[y]]):
            return False
    return bool(np.array_equal(h[M.A], N.A[h]) and np.array_equal(h[M.E], N.E[h]))


def decompose_chain(M: MonadicBLAlgebra) -> Decomposition:
    """Recover blocks and fixed indices, and the isomorphism onto build_chain."""
    B = M.base
    if not B.is_chain:
        raise PreconditionError("not totally ordered")
    if B.size == 1:
        raise PreconditionError("the one-element algebra has no MV-blocks")
    rep = check_mbl_axioms(M)
    if not rep.ok:
        raise PreconditionError(f"not a monadic BL-algebra: {rep.failed_laws}")
    F = _f_sets(B)
    groups: dict[frozenset[int], list[int]] = {}
    for a in range(B.size):
        groups.setdefault(F[a], []).append(a)
    classes = list(groups.values())
    LEQ = B.LEQ

    def below(C, D):
        return all(LEQ[a, b] for a in C for b in D)

    # order by a representative, then confirm against every pair of members
    classes.sort(key=lambda C: int(LEQ[:, C[0]].sum()))
    for i, C in enumerate(classes):
        for D in classes[i + 1 :]:
            if not below(C, D):
                raise InternalError(f"classes {C} and {D} are not ordered elementwise")
        lo, hi = B.meet_all(C), B.join_all(C)
        between = [x for x in range(B.size) if LEQ[lo, x] and LEQ[x, hi]]
        if sorted(between) != sorted(C):
            raise InternalError(f"class {C} is not convex")
    if classes[-1] != [B.top]:
        raise InternalError("the top element does not form its own class")
    image = set(M.forall)
    fixed = set()
    for i, C in enumerate(classes):
        hit = image.intersection(C)
        if hit and len(hit) != len(C):
            raise InternalError(f"class {C} meets the quantifier image only partly")
        if hit:
            fixed.add(i)
    spec = IndexChainSpec(tuple(len(C) + 1 for C in classes[:-1]), frozenset(fixed))
    target = build_chain(spec)
    psi = [0] * B.size
    e = 0
    for C in classes:
        for a in sorted(C, key=lambda a: int(LEQ[:, a].sum())):
            psi[a] = e
            e += 1
    if not _is_iso(M, target, psi):
        raise InternalError("psi is not an isomorphism onto the rebuilt chain")
    return Decomposition(spec, tuple(psi), tuple(tuple(C) for C in classes))


def check_class_extremes(M: MonadicBLAlgebra) -> Report:
    """For a outside the image, forall a is the greatest element of its class
    and exists a the least of its class."""
    B = M.base
    F = _f_sets(B)
    cls = {a: [b for b in range(B.size) if F[b] == F[a]] for a in range(B.size)}
    LEQ = B.LEQ
    image = set(M.forall)
    report = Report("class extremes", labels=B.labels)
    bad_u, bad_z = [], []
    for a in range(B.size):
        if a in image:
            continue
        u, z = M.forall[a], M.exists[a]
        if not all(LEQ[b, u] for b in cls[u]):
            bad_u.append((a,))
        if not all(LEQ[z, b] for b in cls[z]):
            bad_z.append((a,))
    report.record("forall a greatest in its class", bad_u)
    report.record("exists a least in its class", bad_z)
    return report


def chain_identity_failures(M: MonadicBLAlgebra) -> list[tuple[int, int]]:
    J, A = M.base.J, M.A
    x, y = _grid(M.size, 2)
    bad = A[J[x, y]] != J[A[x], A[y]]
    return [(int(x[i]), int(y[i])) for i in np.nonzero(bad)[0]]


def check_chain_variety_identity(M: MonadicBLAlgebra) -> bool:
    """forall(x v y) = forall x v forall y at every pair."""
    return not chain_identity_failures(M)


def all_fixed_sets(r: int) -> list[frozenset[int]]:
    middle = range(1, r)
    return [
        frozenset({0, r, *extra})
        for k in range(r)
        for extra in itertools.combinations(middle, k)
    ]


def crossvalidate_enumeration(
    blocks: Sequence[int], bound: int = DEFAULT_BRUTE_BOUND, jobs: int = 1
) -> Report:
    """Three independent routes to the monadic structures on an ordinal sum."""
    blocks = list(OrdinalSumSpec(list(blocks)).blocks)
    A = ordinal_sum(blocks)
    if A.size > bound:
        raise BoundExceeded(f"size {A.size} exceeds the bound {bound}", witness=(A.size, bound))
    r = len(blocks)

    def by_index_chain():
        return [build_chain(IndexChainSpec(tuple(blocks), S)).q for S in all_fixed_sets(r)]

    routes = {
        "subalgebras": lambda: enumerate_monadic_structures(A),
        "brute force": lambda: brute_force_monadic_structures(A, bound=bound),
        "index chains": by_index_chain,
    }
    with ThreadPoolExecutor(max_workers=max(1, min(jobs, 3))) as pool:
        futures = {name: pool.submit(fn) for name, fn in routes.items()}
        found = {name: set(f.result()) for name, f in futures.items()}

    report = Report(f"enumeration routes on {blocks}")
    ref = found["subalgebras"]
    for name in ("brute force", "index chains"):
        diff = sorted(ref.symmetric_difference(found[name]), key=QuantifierPair.key)
        report.record(f"subalgebras = {name}", [tuple(q.forall) for q in diff])
    expected = 2 ** (r - 1)
    report.record(
        f"count = 2^(r-1) = {expected}",
        [] if all(len(v) == expected for v in found.values()) else [(len(ref),)],
    )
    report.info["counts"] = {name: len(v) for name, v in found.items()}
    return report
