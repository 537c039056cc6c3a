"""Filters, congruences, quotients and subdirect representations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import OPS, FiniteBLAlgebra
from .monadic import MonadicBLAlgebra, QuantifierPair
from .report import InternalError, InvalidParameter, PreconditionError


@dataclass(frozen=True)
class FilterSet:
    elements: frozenset[int]
    monadic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(int(e) for e in self.elements))

    @property
    def bits(self) -> int:
        return sum(1 << e for e in self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __le__(self, other: "FilterSet") -> bool:
        return self.elements <= other.elements

    def __lt__(self, other: "FilterSet") -> bool:
        return self.elements < other.elements

    def key(self) -> tuple:
        return (len(self.elements), sorted(self.elements))


@dataclass(frozen=True)
class CongruenceRel:
    """A partition of the carrier, blocks sorted by least element."""

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_labels(cls, lab: Sequence[int]) -> "CongruenceRel":
        groups: dict[int, list[int]] = {}
        for e, b in enumerate(lab):
            groups.setdefault(int(b), []).append(e)
        return cls(tuple(sorted(tuple(g) for g in groups.values())))

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_index(self) -> np.ndarray:
        lab = np.empty(self.size, dtype=np.int64)
        for i, blk in enumerate(self.blocks):
            lab[list(blk)] = i
        return lab

    def related(self, a: int, b: int) -> bool:
        lab = self.block_index()
        return lab[a] == lab[b]

    def __le__(self, other: "CongruenceRel") -> bool:
        lab = other.block_index()
        return all(len({lab[e] for e in blk}) == 1 for blk in self.blocks)

    def block_of(self, a: int) -> tuple[int, ...]:
        return next(b for b in self.blocks if a in b)


# ---------------------------------------------------------------------------
# filters


def _as_base(A) -> FiniteBLAlgebra:
    return A.base if isinstance(A, MonadicBLAlgebra) else A


def is_filter(A, S: Iterable[int]) -> bool:
    B = _as_base(A)
    S = frozenset(S)
    if B.top not in S:
        return False
    idx = np.array(sorted(S))
    if not set(B.T[np.ix_(idx, idx)].ravel().tolist()) <= S:
        return False
    return all(b in S for a in S for b in range(B.size) if B.LEQ[a, b])


def is_monadic_filter(M: MonadicBLAlgebra, S: Iterable[int]) -> bool:
    S = frozenset(S)
    return is_filter(M, S) and all(M.forall[a] in S for a in S)


def _filter_closure(B: FiniteBLAlgebra, gens: Iterable[int]) -> frozenset[int]:
    """Up-closure of all finite products of generators (and the top)."""
    prods = {B.top, *gens}
    frontier = set(prods)
    while frontier:
        new = {B.mul[a][b] for a in frontier for b in prods} - prods
        prods |= new
        frontier = new
    up = B.LEQ[sorted(prods)].any(axis=0)
    return frozenset(int(i) for i in np.nonzero(up)[0])


def generated_filter(A, X: Iterable[int]) -> FilterSet:
    X = list(X)
    if not X:
        raise InvalidParameter("the generating set must be nonempty")
    B = _as_base(A)
    return FilterSet(_filter_closure(B, X), monadic=False)


def generated_monadic_filter(M: MonadicBLAlgebra, X: Iterable[int]) -> FilterSet:
    """Everything above some finite product of universal closures of generators."""
    X = list(X)
    if not X:
        raise InvalidParameter("the generating set must be nonempty")
    F = _filter_closure(M.base, [M.forall[x] for x in X])
    return FilterSet(F, monadic=True)


def all_filters(A) -> list[FilterSet]:
    """Every filter of the BL reduct, sorted by size then elements."""
    B = _as_base(A)
    start = _filter_closure(B, [])
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for F in frontier:
            for e in range(B.size):
                if e not in F:
                    G = _filter_closure(B, F | {e})
                    if G not in seen:
                        seen.add(G)
                        nxt.append(G)
        frontier = nxt
    return sorted((FilterSet(F) for F in seen), key=FilterSet.key)


def all_monadic_filters(M: MonadicBLAlgebra) -> list[FilterSet]:
    return [FilterSet(F.elements, True) for F in all_filters(M) if is_monadic_filter(M, F.elements)]


def filter_join(A, F: FilterSet, G: FilterSet) -> FilterSet:
    return FilterSet(_filter_closure(_as_base(A), F.elements | G.elements), F.monadic and G.monadic)


def filter_meet(F: FilterSet, G: FilterSet) -> FilterSet:
    return FilterSet(F.elements & G.elements, F.monadic and G.monadic)


# ---------------------------------------------------------------------------
# congruences


def _unary_tables(A) -> list[np.ndarray]:
    return [A.A, A.E] if isinstance(A, MonadicBLAlgebra) else []


def _close_partition(B: FiniteBLAlgebra, unary: list[np.ndarray], lab: np.ndarray) -> np.ndarray:
    """Smallest congruence containing the equivalence given by block labels."""
    parent = list(range(B.size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            return True
        return False

    for a in range(B.size):
        union(a, int(np.nonzero(lab == lab[a])[0][0]))
    tabs = [B.J, B.M, B.T, B.I]
    changed = True
    while changed:
        changed = False
        roots = np.array([find(a) for a in range(B.size)])
        xs, ys = np.nonzero((roots[:, None] == roots[None, :]) & np.triu(np.ones((B.size,) * 2, bool), 1))
        for t in tabs:
            for u, v in zip(t[xs].ravel(), t[ys].ravel()):
                changed |= union(int(u), int(v))
            for u, v in zip(t[:, xs].ravel(), t[:, ys].ravel()):
                changed |= union(int(u), int(v))
        for t in unary:
            for u, v in zip(t[xs], t[ys]):
                changed |= union(int(u), int(v))
    return np.array([find(a) for a in range(B.size)])


def principal_congruence(A, a: int, b: int) -> CongruenceRel:
    B = _as_base(A)
    lab = np.arange(B.size)
    lab[b] = lab[a] = min(a, b)
    return CongruenceRel.from_labels(_close_partition(B, _unary_tables(A), lab))


def all_congruences(A) -> list[CongruenceRel]:
    """Congruence lattice computed directly, as joins of principal congruences.

    For a :class:`MonadicBLAlgebra` the congruences must also respect both
    quantifiers; for a plain BL-algebra only the four binary operations.
    """
    B = _as_base(A)
    unary = _unary_tables(A)
    principal = {
        principal_congruence(A, a, b) for a in range(B.size) for b in range(a + 1, B.size)
    }
    bottom = CongruenceRel(tuple((a,) for a in range(B.size)))
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for th in frontier:
            for p in principal:
                # join: merge blocks of both partitions, then close
                merged = th.block_index()
                for blk in p.blocks:
                    tgt = merged[blk[0]]
                    for e in blk[1:]:
                        merged[merged == merged[e]] = tgt
                j = CongruenceRel.from_labels(_close_partition(B, unary, merged))
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(seen, key=lambda c: (-len(c.blocks), c.blocks))


def is_congruence(A, theta: CongruenceRel) -> bool:
    B = _as_base(A)
    lab = theta.block_index()
    closed = CongruenceRel.from_labels(_close_partition(B, _unary_tables(A), lab))
    return closed == theta


def congruence_of_filter(A, F: FilterSet | Iterable[int]) -> CongruenceRel:
    """theta_F = {(a,b): (a->b)*(b->a) in F}.

    The relation is returned even when F is not monadic; use
    :func:`respects_quantifiers` to see whether it is compatible with them.
    """
    B = _as_base(A)
    elems = F.elements if isinstance(F, FilterSet) else frozenset(F)
    inF = np.zeros(B.size, dtype=bool)
    inF[list(elems)] = True
    rel = inF[B.T[B.I, B.I.T]]
    lab = np.array([int(np.nonzero(rel[a])[0][0]) for a in range(B.size)])
    return CongruenceRel.from_labels(lab)


def respects_quantifiers(M: MonadicBLAlgebra, theta: CongruenceRel) -> bool:
    lab = theta.block_index()
    same = lab[:, None] == lab[None, :]
    return bool(
        (~same | (lab[M.A][:, None] == lab[M.A][None, :])).all()
        and (~same | (lab[M.E][:, None] == lab[M.E][None, :])).all()
    )


def filter_of_congruence(A, theta: CongruenceRel) -> FilterSet:
    """The block of the top element."""
    B = _as_base(A)
    return FilterSet(theta.block_of(B.top), monadic=isinstance(A, MonadicBLAlgebra))


# ---------------------------------------------------------------------------
# quotients


def _quotient_tables(B: FiniteBLAlgebra, theta: CongruenceRel):
    blocks = list(theta.blocks)
    lab = theta.block_index()
    reps = [blk[0] for blk in blocks]
    # [x] <= [y] iff x -> y lies in the class of the top
    top = lab[B.top]
    le = [[lab[B.imp[ra][rb]] == top for rb in reps] for ra in reps]
    # classes are intervals, so ordering by largest member keeps the carrier
    # order whenever that is already a linear extension
    k = len(blocks)
    order = sorted(range(k), key=lambda i: blocks[i][-1])
    pos = {c: p for p, c in enumerate(order)}
    if any(le[i][j] and pos[i] > pos[j] for i in range(k) for j in range(k)):
        order = sorted(range(k), key=lambda i: (sum(le[j][i] for j in range(k)), blocks[i][-1]))
    new = {old: k for k, old in enumerate(order)}
    tables = {
        name: [[new[lab[getattr(B, name)[reps[i]][reps[j]]]] for j in order] for i in order]
        for name in OPS
    }
    labels = ["{" + ",".join(B.label(e) for e in blocks[i]) + "}" for i in order]
    return tables, labels, lab, new


def quotient(A, F: FilterSet | Iterable[int]):
    """A/theta_F. For a monadic algebra, F must be a monadic filter and the
    result carries the induced quantifiers."""
    elems = F.elements if isinstance(F, FilterSet) else frozenset(F)
    B = _as_base(A)
    if not is_filter(B, elems):
        raise PreconditionError(f"{sorted(elems)} is not a filter", witness=tuple(sorted(elems)))
    theta = congruence_of_filter(B, elems)
    tables, labels, lab, new = _quotient_tables(B, theta)
    Q = FiniteBLAlgebra(labels=labels, **tables)
    if not isinstance(A, MonadicBLAlgebra):
        return Q
    if not is_monadic_filter(A, elems):
        bad = next(a for a in elems if A.forall[a] not in elems)
        raise PreconditionError(f"{sorted(elems)} is not closed under forall", witness=(bad,))
    reps = [blk[0] for blk in theta.blocks]
    inv = {v: k for k, v in new.items()}
    q = QuantifierPair(
        [new[lab[A.forall[reps[inv[k]]]]] for k in range(len(reps))],
        [new[lab[A.exists[reps[inv[k]]]]] for k in range(len(reps))],
    )
    return MonadicBLAlgebra(Q, q)


def natural_map(A, F: FilterSet | Iterable[int]) -> list[int]:
    """Index of the class of each element in :func:`quotient`."""
    elems = F.elements if isinstance(F, FilterSet) else frozenset(F)
    B = _as_base(A)
    theta = congruence_of_filter(B, elems)
    _, _, lab, new = _quotient_tables(B, theta)
    return [new[lab[a]] for a in range(B.size)]


def is_homomorphism(A, Q, h: Sequence[int]) -> bool:
    BA, BQ = _as_base(A), _as_base(Q)
    n = BA.size
    for name in OPS:
        ta, tq = getattr(BA, name), getattr(BQ, name)
        if any(h[ta[a][b]] != tq[h[a]][h[b]] for a in range(n) for b in range(n)):
            return False
    if isinstance(A, MonadicBLAlgebra) and isinstance(Q, MonadicBLAlgebra):
        for name in ("forall", "exists"):
            ta, tq = getattr(A, name), getattr(Q, name)
            if any(h[ta[a]] != tq[h[a]] for a in range(n)):
                return False
    return True


# ---------------------------------------------------------------------------
# lattice isomorphisms


def _order_iso(src: list, dst: list, f, le_src, le_dst) -> bool:
    """``f`` maps src bijectively onto dst and preserves and reflects order."""
    img = [f(x) for x in src]
    if sorted(map(repr, img)) != sorted(map(repr, dst)) or len(set(map(repr, img))) != len(dst):
        return False
    return all(le_src(x, y) == le_dst(fx, fy) for x, fx in zip(src, img) for y, fy in zip(src, img))


def exists_subalgebra(M: MonadicBLAlgebra) -> tuple[FiniteBLAlgebra, list[int]]:
    """The BL-subalgebra on the quantifier image and its inclusion map."""
    elems = sorted(set(M.exists))
    return M.base.restrict(elems), elems


@dataclass
class LatticeIsoReport:
    sizes: dict[str, int]
    maps: dict[str, bool]
    chains: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.maps.values()) and len(set(self.sizes.values())) == 1

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "sizes": self.sizes, "maps": self.maps, "chains": self.chains}

    def __str__(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        parts = ", ".join(f"{k}={v}" for k, v in self.sizes.items())
        return f"lattice isomorphisms: {status} ({parts})"


def _is_chain(items: list, le) -> bool:
    return all(le(a, b) or le(b, a) for a in items for b in items)


def check_lattice_isomorphisms(M: MonadicBLAlgebra) -> LatticeIsoReport:
    """Con_MBL(A) ~ F_m(A) ~ F(exists A) ~ Con_BL(exists A), each lattice
    computed independently and each map checked to be an order isomorphism."""
    con_m = all_congruences(M)
    fil_m = all_monadic_filters(M)
    EA, emb = exists_subalgebra(M)
    fil_e = all_filters(EA)
    con_e = all_congruences(EA)

    def le_f(F, G):
        return F.elements <= G.elements

    def le_c(a, b):
        return a <= b

    def restrict(F):
        return FilterSet(
            {emb.index(e) for e in F.elements if e in emb}
        )

    def expand(G):
        return FilterSet(generated_monadic_filter(M, [emb[e] for e in G.elements]).elements, True)

    def one_over(th):
        return filter_of_congruence(M, th)

    maps = {
        "Con_MBL -> F_m (theta -> 1/theta)": _order_iso(con_m, fil_m, one_over, le_c, le_f),
        "F_m -> Con_MBL (F -> theta_F)": _order_iso(
            fil_m, con_m, lambda F: congruence_of_filter(M, F), le_f, le_c
        ),
        "F_m -> F(EA) (F -> F cap EA)": _order_iso(fil_m, fil_e, restrict, le_f, le_f),
        "F(EA) -> F_m (G -> FMg(G))": _order_iso(fil_e, fil_m, expand, le_f, le_f),
        "F(EA) -> Con_BL(EA) (G -> theta_G)": _order_iso(
            fil_e, con_e, lambda G: congruence_of_filter(EA, G), le_f, le_c
        ),
    }
    sizes = {"Con_MBL(A)": len(con_m), "F_m(A)": len(fil_m), "F(EA)": len(fil_e), "Con_BL(EA)": len(con_e)}
    chains = {
        "Con_MBL(A)": _is_chain(con_m, le_c),
        "F_m(A)": _is_chain(fil_m, le_f),
        "F(EA)": _is_chain(fil_e, le_f),
        "Con_BL(EA)": _is_chain(con_e, le_c),
    }
    return LatticeIsoReport(sizes, maps, chains)


# ---------------------------------------------------------------------------
# subdirect irreducibility


def _si_and_simple(cons: list[CongruenceRel]) -> tuple[bool, bool]:
    """Unique atom / exactly two elements in a congruence lattice."""
    bottom = min(cons, key=lambda c: -len(c.blocks))
    proper = [c for c in cons if c != bottom]
    atoms = [c for c in proper if not any(d != c and d <= c for d in proper)]
    return len(atoms) == 1, len(cons) == 2


def is_subdirectly_irreducible(M: MonadicBLAlgebra) -> bool:
    si, _ = _si_and_simple(all_congruences(M))
    EA, _ = exists_subalgebra(M)
    si_e, _ = _si_and_simple(all_congruences(EA))
    if si != si_e:
        raise InternalError("subdirect irreducibility of A and of exists A disagree")
    if si and not EA.is_chain:
        raise InternalError("A is subdirectly irreducible but exists A is not a chain")
    return si


def is_simple(M: MonadicBLAlgebra) -> bool:
    _, simple = _si_and_simple(all_congruences(M))
    EA, _ = exists_subalgebra(M)
    _, simple_e = _si_and_simple(all_congruences(EA))
    if simple != simple_e:
        raise InternalError("simplicity of A and of exists A disagree")
    return simple


# ---------------------------------------------------------------------------
# prime filters and subdirect representation


def filter_splitting_check(A, F: FilterSet | Iterable[int], x: int, y: int) -> bool:
    """F == Fg(F u {x->y}) cap Fg(F u {y->x})."""
    B = _as_base(A)
    elems = F.elements if isinstance(F, FilterSet) else frozenset(F)
    if not is_filter(B, elems):
        raise PreconditionError(f"{sorted(elems)} is not a filter")
    left = _filter_closure(B, elems | {B.imp[x][y]})
    right = _filter_closure(B, elems | {B.imp[y][x]})
    return (left & right) == elems


def is_prime(A, F: FilterSet | Iterable[int]) -> bool:
    B = _as_base(A)
    elems = F.elements if isinstance(F, FilterSet) else frozenset(F)
    return all(
        B.imp[a][b] in elems or B.imp[b][a] in elems for a in range(B.size) for b in range(B.size)
    )


def _require_chain_image(M: MonadicBLAlgebra) -> None:
    EA, _ = exists_subalgebra(M)
    if not EA.is_chain:
        raise PreconditionError("exists A is not totally ordered")


def find_prime_filter_avoiding(M: MonadicBLAlgebra, a: int) -> FilterSet:
    """A maximal filter disjoint from {a v forall r : r != 1}.

    Among maximal candidates the largest is chosen, ties broken by the
    smallest bitset.
    """
    _require_chain_image(M)
    B = M.base
    if a == B.top:
        raise PreconditionError("a must differ from the top element", witness=(a,))
    avoid = {B.join[a][M.forall[r]] for r in range(B.size) if r != B.top}
    family = [F for F in all_filters(B) if not (F.elements & avoid)]
    maximal = [F for F in family if not any(F.elements < G.elements for G in family)]
    if not maximal:
        raise InternalError(f"no filter avoids {sorted(avoid)}")
    P = min(maximal, key=lambda F: (-len(F), F.bits))
    if not is_prime(B, P):
        raise InternalError(f"maximal filter {sorted(P.elements)} avoiding C is not prime")
    return P


@dataclass
class SubdirectFactor:
    element: int
    prime: FilterSet
    quotient: FiniteBLAlgebra
    projection: list[int]
    is_chain: bool
    injective_on_image: bool


@dataclass
class SubdirectRepresentation:
    factors: list[SubdirectFactor]
    intersection_is_top: bool
    product_map_injective: bool

    @property
    def ok(self) -> bool:
        return (
            self.intersection_is_top
            and self.product_map_injective
            and all(f.is_chain and f.injective_on_image for f in self.factors)
        )

    def __bool__(self) -> bool:
        return self.ok

    @property
    def distinct_primes(self) -> list[FilterSet]:
        """The P_a with repeats removed, in order of first appearance."""
        seen, out = set(), []
        for f in self.factors:
            if f.prime.elements not in seen:
                seen.add(f.prime.elements)
                out.append(f.prime)
        return out

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "distinct_primes": [sorted(P.elements) for P in self.distinct_primes],
            "intersection_is_top": self.intersection_is_top,
            "product_map_injective": self.product_map_injective,
            "factors": [
                {
                    "element": f.element,
                    "prime": sorted(f.prime.elements),
                    "quotient_size": f.quotient.size,
                    "is_chain": f.is_chain,
                    "injective_on_image": f.injective_on_image,
                }
                for f in self.factors
            ],
        }


def subdirect_representation(M: MonadicBLAlgebra) -> SubdirectRepresentation:
    """One totally ordered factor A/P_a per element a != 1."""
    _require_chain_image(M)
    B = M.base
    image = sorted(set(M.exists))
    factors = []
    for a in range(B.size):
        if a == B.top:
            continue
        P = find_prime_filter_avoiding(M, a)
        Q = quotient(B, P)
        h = natural_map(B, P)
        factors.append(
            SubdirectFactor(
                element=a,
                prime=P,
                quotient=Q,
                projection=h,
                is_chain=Q.is_chain,
                injective_on_image=len({h[e] for e in image}) == len(image),
            )
        )
    if factors:
        inter = frozenset.intersection(*(f.prime.elements for f in factors))
    else:
        inter = frozenset({B.top})
    signatures = {tuple(f.projection[e] for f in factors) for e in range(B.size)}
    injective = len(signatures) == B.size if factors else B.size == 1
    return SubdirectRepresentation(factors, inter == {B.top}, injective)
