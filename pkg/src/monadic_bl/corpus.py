"""Named finite algebras used by the tests, the acceptance suite and the CLI.

``bl_algebras_up_to(n)`` builds every BL-algebra of size at most ``n`` that
arises from finite MV-chains by ordinal sums (lower summand a chain) and
direct products. Up to size 5 this is every finite BL-algebra up to
isomorphism; beyond that it is a large family, not a classification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    FiniteBLAlgebra,
    direct_product,
    heyting_algebra,
    make_mv_chain,
    ordinal_sum,
    stack,
    trivial_algebra,
)
from .chains import decompose_chain
from .monadic import (
    MonadicBLAlgebra,
    QuantifierPair,
    build_functional,
    enumerate_monadic_structures,
)


@dataclass(frozen=True)
class Named:
    name: str
    algebra: MonadicBLAlgebra


def golden_chain() -> MonadicBLAlgebra:
    """L3 + L2 with forall = [0_1, 1/2, 1/2, 1] and exists = [0_1, 1/2, 1, 1]."""
    return MonadicBLAlgebra(ordinal_sum([3, 2]), QuantifierPair([0, 1, 1, 3], [0, 1, 3, 3]))


HEYTING5_LABELS = ("0", "a", "b", "c", "1")


def heyting5_base() -> FiniteBLAlgebra:
    """0 < a < b, c < 1 with b and c incomparable."""
    below = {0: {0}, 1: {0, 1}, 2: {0, 1, 2}, 3: {0, 1, 3}, 4: {0, 1, 2, 3, 4}}
    leq = [[x in below[y] for y in range(5)] for x in range(5)]
    return heyting_algebra(leq, HEYTING5_LABELS)


def heyting5_quantifiers() -> QuantifierPair:
    # exists: 0, c, 1, c, 1   forall: 0, 0, 0, c, 1
    return QuantifierPair([0, 0, 0, 3, 4], [0, 3, 4, 3, 4])


def compositions(total: int) -> list[tuple[int, ...]]:
    """Ordered tuples of positive integers summing to ``total``."""
    out = []
    for cuts in itertools.product((False, True), repeat=total - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(tuple(parts))
    return sorted(out)


def chain_blocks_of_size(n: int) -> list[tuple[int, ...]]:
    """Block lists of every ordinal sum of MV-chains with ``n`` elements."""
    if n < 2:
        return []
    return [tuple(p + 1 for p in c) for c in compositions(n - 1)]


def blocks_name(blocks) -> str:
    if len(blocks) == 1:
        return f"L{blocks[0]}"
    return "+".join(f"L{k}" for k in blocks)


@lru_cache(maxsize=None)
def bl_algebras_up_to(n: int) -> tuple[tuple[str, FiniteBLAlgebra], ...]:
    """(name, algebra) sorted by size, then chains before non-chains, then name."""
    found: dict[str, FiniteBLAlgebra] = {"trivial": trivial_algebra()}
    chains = {}
    for size in range(2, n + 1):
        for b in chain_blocks_of_size(size):
            chains[blocks_name(b)] = ordinal_sum(list(b))
    found.update(chains)
    nonchains: dict[str, FiniteBLAlgebra] = {}
    changed = True
    while changed:
        changed = False
        pool = {**chains, **nonchains}
        # direct products of two members (products of more arise by iteration)
        for (na, A), (nb, B) in itertools.combinations_with_replacement(sorted(pool.items()), 2):
            if A.size * B.size <= n:
                name = f"({na})x({nb})"
                if name not in nonchains:
                    nonchains[name] = direct_product(A, B)
                    changed = True
        for (nc, C), (nu, U) in itertools.product(sorted(chains.items()), sorted(nonchains.items())):
            if C.size - 1 + U.size <= n:
                name = f"{nc}+[{nu}]"
                if name not in nonchains:
                    nonchains[name] = stack(C, U)
                    changed = True
    found.update(nonchains)
    # drop isomorphic duplicates (e.g. the two orders of a product)
    unique: dict[tuple, tuple[str, FiniteBLAlgebra]] = {}
    for name, A in found.items():
        key = iso_invariant(A)
        for other_name, B in unique.get(key, []):
            if are_isomorphic(A, B):
                break
        else:
            unique.setdefault(key, []).append((name, A))
    items = [x for group in unique.values() for x in group]
    items.sort(key=lambda t: (t[1].size, not t[1].is_chain, t[0]))
    return tuple(items)


def iso_invariant(A: FiniteBLAlgebra) -> tuple:
    LEQ = A.LEQ
    return (
        A.size,
        A.is_chain,
        tuple(sorted(int(LEQ[:, a].sum()) for a in range(A.size))),
        tuple(sorted(int((A.T[a] == 0).sum()) for a in range(A.size))),
    )


def are_isomorphic(A: FiniteBLAlgebra, B: FiniteBLAlgebra) -> bool:
    """Backtracking search for an isomorphism preserving all four operations."""
    if A.size != B.size:
        return False
    n = A.size
    tabs = [(getattr(A, o), getattr(B, o)) for o in ("join", "meet", "mul", "imp")]
    h = [-1] * n
    used = [False] * n

    def consistent(k: int) -> bool:
        for a in range(k + 1):
            for b in range(k + 1):
                for ta, tb in tabs:
                    c = ta[a][b]
                    if h[c] != -1 and h[c] != tb[h[a]][h[b]]:
                        return False
        return True

    order = list(range(n))

    def go(k: int) -> bool:
        if k == n:
            return True
        for cand in range(n):
            if used[cand]:
                continue
            h[order[k]] = cand
            used[cand] = True
            if consistent(k) and go(k + 1):
                return True
            used[cand] = False
            h[order[k]] = -1
        return False

    return go(0)


def structure_name(base_name: str, A: FiniteBLAlgebra, q: QuantifierPair) -> str:
    if A.is_chain and A.size > 1:
        fixed = sorted(decompose_chain(MonadicBLAlgebra(A, q)).spec.fixed)
        return f"{base_name} S={{{','.join(map(str, fixed))}}}"
    image = sorted(q.image)
    return f"{base_name} image={{{','.join(A.label(e) for e in image)}}}"


def monadic_family(max_size: int) -> list[Named]:
    """Every monadic structure on every algebra of :func:`bl_algebras_up_to`."""
    out = []
    for name, A in bl_algebras_up_to(max_size):
        for q in enumerate_monadic_structures(A):
            out.append(Named(structure_name(name, A, q), MonadicBLAlgebra(A, q)))
    return out


def chain_corpus(max_size: int = 5) -> list[Named]:
    return [m for m in monadic_family(max_size) if m.algebra.base.is_chain]


def functional_corpus() -> list[Named]:
    return [
        Named("L2^2 functional", build_functional(make_mv_chain(2), 2)),
        Named("L3^2 functional", build_functional(make_mv_chain(3), 2)),
    ]


def nonchain_corpus() -> list[Named]:
    L2 = make_mv_chain(2)
    out = []
    for name, A in (("L2xL2", direct_product(L2, L2)), ("L2+[L2xL2]", stack(L2, direct_product(L2, L2)))):
        for q in enumerate_monadic_structures(A):
            out.append(Named(structure_name(name, A, q), MonadicBLAlgebra(A, q)))
    return out


def acceptance_corpus() -> list[Named]:
    """Chains up to size 5 (the one-element algebra included) with all their structures, the functional algebras
    over L2 and L3 with two worlds, some non-chains, and the golden chain
    (which is also among the chains)."""
    out = chain_corpus(5)
    out += functional_corpus()
    out += nonchain_corpus()
    out.append(Named("golden chain", golden_chain()))
    return out
