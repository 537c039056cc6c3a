"""Subvarieties: monadic MV, monadic Goedel vs monadic Heyting, monadic product.

MMV-algebras live in their own representation (:class:`MMVAlgebra`, signature
oplus, neg, exists, 0) with explicit converters to and from
:class:`~monadic_bl.monadic.MonadicBLAlgebra`, so that the term equivalence
can be tested rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .algebra import (
    FiniteBLAlgebra,
    _grid,
    check_lattice_laws,
    classify,
    is_bl_algebra,
    make_mv_chain,
)
from .monadic import (
    MonadicBLAlgebra,
    QuantifierPair,
    _closure_operators,
    check_mbl_axioms,
    enumerate_monadic_structures,
)
from .report import InvalidParameter, PreconditionError, Report, StructuralError


def _rec(report: Report, name: str, mask, coords) -> None:
    mask = np.asarray(mask)
    if mask.ndim == 0:
        report.record(name, [] if bool(mask) else [()])
        return
    report.record(name, [tuple(int(c[i]) for c in coords) for i in np.nonzero(~mask)[0]])


# ---------------------------------------------------------------------------
# MMV-algebras


def _table(name: str, t, n: int, arity: int) -> tuple:
    arr = np.asarray(t, dtype=np.int64)
    if arr.shape != (n,) * arity:
        raise StructuralError(f"{name} table has shape {arr.shape}, expected {(n,) * arity}")
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        raise StructuralError(f"{name} entry at {tuple(bad[0])} is out of range")
    return tuple(map(tuple, arr.tolist())) if arity == 2 else tuple(arr.tolist())


@dataclass(frozen=True)
class MMVAlgebra:
    """Monadic MV-algebra given by oplus, neg and exists tables."""

    oplus: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    exists: tuple[int, ...]
    zero: int = 0
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.neg)
        if n == 0:
            raise StructuralError("empty carrier")
        object.__setattr__(self, "oplus", _table("oplus", self.oplus, n, 2))
        object.__setattr__(self, "neg", _table("neg", self.neg, n, 1))
        object.__setattr__(self, "exists", _table("exists", self.exists, n, 1))
        if not 0 <= self.zero < n:
            raise StructuralError(f"zero index {self.zero} out of range")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def size(self) -> int:
        return len(self.neg)

    @property
    def one(self) -> int:
        return self.neg[self.zero]

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    @cached_property
    def O(self) -> np.ndarray:
        return np.asarray(self.oplus, dtype=np.int64)

    @cached_property
    def N(self) -> np.ndarray:
        return np.asarray(self.neg, dtype=np.int64)

    @cached_property
    def E(self) -> np.ndarray:
        return np.asarray(self.exists, dtype=np.int64)

    @cached_property
    def A(self) -> np.ndarray:
        return self.N[self.E[self.N]]

    @cached_property
    def T(self) -> np.ndarray:
        N, O = self.N, self.O
        return N[O[N[:, None], N[None, :]]]

    @cached_property
    def I(self) -> np.ndarray:
        return self.O[self.N[:, None], np.arange(self.size)[None, :]]

    @cached_property
    def M(self) -> np.ndarray:
        x = np.arange(self.size)
        return self.T[x[:, None], self.I]

    @cached_property
    def J(self) -> np.ndarray:
        x = np.arange(self.size)
        N, O = self.N, self.O
        # not(not x + y) + y
        return O[N[O[N[x][:, None], x[None, :]]], x[None, :]]

    @cached_property
    def LEQ(self) -> np.ndarray:
        return self.I == self.one


def check_mv_axioms(M: MMVAlgebra, report: Report | None = None) -> Report:
    report = report if report is not None else Report("MV axioms", labels=M.labels)
    O, N, z = M.O, M.N, M.zero
    x = np.arange(M.size)
    a, b = _grid(M.size, 2)
    p, q, r = _grid(M.size, 3)
    _rec(report, "mv associative", O[O[p, q], r] == O[p, O[q, r]], (p, q, r))
    _rec(report, "mv commutative", O[a, b] == O[b, a], (a, b))
    _rec(report, "mv zero", O[x, z] == x, (x,))
    _rec(report, "mv involution", N[N[x]] == x, (x,))
    _rec(report, "mv absorbing one", O[x, N[z]] == N[z], (x,))
    _rec(report, "mv lukasiewicz", O[N[O[N[a], b]], b] == O[N[O[N[b], a]], a], (a, b))
    return report


def check_mmv_axioms(M: MMVAlgebra) -> Report:
    """MV reduct, MV1-MV6, the seven properties of forall = not exists not,
    and two MV identities, each at every tuple."""
    report = check_mv_axioms(M, Report("MMV axioms", labels=M.labels))
    O, N, E, A = M.O, M.N, M.E, M.A
    T, I, Mt, J, LEQ, one = M.T, M.I, M.M, M.J, M.LEQ, M.one
    x = np.arange(M.size)
    a, b = _grid(M.size, 2)
    _rec(report, "MV1", I[x, E[x]] == one, (x,))
    _rec(report, "MV2", E[J[a, b]] == J[E[a], E[b]], (a, b))
    _rec(report, "MV3", E[N[E[x]]] == N[E[x]], (x,))
    _rec(report, "MV4", E[O[E[a], E[b]]] == O[E[a], E[b]], (a, b))
    _rec(report, "MV5", E[T[x, x]] == T[E[x], E[x]], (x,))
    _rec(report, "MV6", E[O[x, x]] == O[E[x], E[x]], (x,))
    _rec(report, "forall a -> a = 1", I[A[x], x] == one, (x,))
    _rec(report, "forall not forall a = not forall a", A[N[A[x]]] == N[A[x]], (x,))
    _rec(report, "forall(exists a v b) = exists a v forall b", A[J[E[a], b]] == J[E[a], A[b]], (a, b))
    _rec(report, "forall(a -> b) <= forall a -> forall b", LEQ[A[I[a, b]], I[A[a], A[b]]], (a, b))
    _rec(report, "forall(a ^ b) = forall a ^ forall b", A[Mt[a, b]] == Mt[A[a], A[b]], (a, b))
    _rec(report, "forall(forall a + forall b) = forall a + forall b", A[O[A[a], A[b]]] == O[A[a], A[b]], (a, b))
    _rec(report, "forall(a * a) = forall a * forall a", A[T[x, x]] == T[A[x], A[x]], (x,))
    _rec(report, "a + b = (a -> a * b) -> b", O[a, b] == I[I[a, T[a, b]], b], (a, b))
    two = O[x, x]
    sq = T[I[a, b], I[a, b]]
    _rec(report, "(a -> b)^2 <= 2a -> 2b", I[sq, I[two[a], two[b]]] == one, (a, b))
    return report


def check_involutive_mbl_identities(M: MonadicBLAlgebra) -> Report:
    """Identities valid in every MBL-algebra (first two) and in every
    involutive one (the rest), with not x = x -> 0 and x + y = not x -> y."""
    B = M.base
    T, I, Nn = B.T, B.I, B.N
    A, E = M.A, M.E
    O = I[Nn[:, None], np.arange(B.size)[None, :]]
    x = np.arange(B.size)
    a, b = _grid(B.size, 2)
    report = Report("involutive MBL identities", labels=B.labels)
    _rec(report, "forall not forall", A[Nn[A[x]]] == Nn[A[x]], (x,))
    _rec(report, "not exists", Nn[E[x]] == A[Nn[x]], (x,))
    if not bool(np.all(Nn[Nn] == x)):
        return report
    _rec(report, "not forall", Nn[A[x]] == E[Nn[x]], (x,))
    _rec(report, "oplus via forall", O[a, b] == I[O[A[T[a, b]], Nn[a]], b], (a, b))
    _rec(report, "forall(a * exists b)", A[T[a, E[b]]] == T[A[a], E[b]], (a, b))
    _rec(report, "exists(exists a -> b)", E[I[E[a], b]] == I[E[a], E[b]], (a, b))
    return report


def mbl_to_mmv(M: MonadicBLAlgebra) -> MMVAlgebra:
    """not x := x -> 0, x + y := not x -> y; exists is kept."""
    B = M.base
    N = B.N
    bad = [a for a in range(B.size) if N[N[a]] != a]
    if bad:
        a = bad[0]
        raise PreconditionError(
            f"not involutive: ~~{B.label(a)} = {B.label(int(N[N[a]]))}", witness=(a,)
        )
    O = B.I[N[:, None], np.arange(B.size)[None, :]]
    return MMVAlgebra(O, N, M.exists, zero=0, labels=B.labels)


def mmv_to_mbl(M: MMVAlgebra) -> MonadicBLAlgebra:
    """forall x := not exists not x, x * y := not(not x + not y), and the
    lattice operations from the usual MV terms."""
    if M.zero != 0 or M.one != M.size - 1:
        raise PreconditionError(
            "carrier must be numbered with 0 first and 1 last", witness=(M.zero, M.one)
        )
    base = FiniteBLAlgebra(join=M.J, meet=M.M, mul=M.T, imp=M.I, labels=M.labels)
    return MonadicBLAlgebra(base, QuantifierPair(M.A.tolist(), M.exists))


def check_mmv_chain_triviality(k_max: int) -> Report:
    """On every finite MV-chain the only monadic structure is the identity."""
    if k_max < 2:
        raise InvalidParameter(f"k_max must be at least 2, got {k_max}")
    report = Report(f"MV-chain triviality up to L{k_max}")
    for k in range(2, k_max + 1):
        found = enumerate_monadic_structures(make_mv_chain(k))
        ok = len(found) == 1 and found[0] == QuantifierPair.identity(k)
        report.record(f"L{k}: {len(found)} structure(s)", [] if ok else [(k,)])
    return report


# ---------------------------------------------------------------------------
# monadic Heyting algebras


def check_heyting_reduct(H: FiniteBLAlgebra) -> Report:
    """Bounded lattice plus relative pseudocomplement: a ^ b <= c iff a <= b -> c."""
    report = Report("Heyting reduct", labels=H.labels)
    check_lattice_laws(H, report)
    p, q, r = _grid(H.size, 3)
    LEQ, M, I = H.LEQ, H.M, H.I
    _rec(report, "relative pseudocomplement", LEQ[M[p, q], r] == LEQ[p, I[q, r]], (p, q, r))
    return report


@dataclass
class HeytingReport:
    axioms: Report
    lemma: Report
    join_law: list[tuple[int, int]]
    prelinearity: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        """Monadic Heyting algebra (H1-H5). The join law
        forall(exists x v y) = exists x v forall y and prelinearity are
        reported separately."""
        return self.axioms.ok

    @property
    def satisfies_join_law(self) -> bool:
        return not self.join_law

    @property
    def prelinear(self) -> bool:
        return not self.prelinearity

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "axioms": self.axioms.to_dict(),
            "lemma": self.lemma.to_dict(),
            "join_law": [list(w) for w in self.join_law],
            "prelinearity": [list(w) for w in self.prelinearity],
        }

    def __str__(self) -> str:
        return "\n".join(
            [
                str(self.axioms),
                str(self.lemma),
                "forall(exists x v y) = exists x v forall y: "
                + ("PASS" if self.satisfies_join_law else f"FAIL at {self.join_law[0]}"),
                "prelinearity: " + ("PASS" if self.prelinear else f"FAIL at {self.prelinearity[0]}"),
            ]
        )


def check_monadic_heyting(H: FiniteBLAlgebra | MonadicBLAlgebra, q: QuantifierPair | None = None) -> HeytingReport:
    """H1-H5 and standard consequences; mul is ignored (Heyting signature)."""
    if isinstance(H, MonadicBLAlgebra):
        H, q = H.base, H.q
    if q is None:
        raise InvalidParameter("quantifiers are required")
    red = check_heyting_reduct(H)
    if not red.ok:
        v = red.violations()[0]
        raise PreconditionError(f"not a Heyting algebra: {v.law} fails", witness=v.witness)
    n, top = H.size, H.top
    J, Mt, I, LEQ = H.J, H.M, H.I, H.LEQ
    A = np.asarray(q.forall, dtype=np.int64)
    E = np.asarray(q.exists, dtype=np.int64)
    x = np.arange(n)
    a, b = _grid(n, 2)

    ax = Report("monadic Heyting axioms", labels=H.labels)
    _rec(ax, "H1", LEQ[A[x], x] & LEQ[x, E[x]], (x,))
    _rec(ax, "H2", (A[Mt[a, b]] == Mt[A[a], A[b]]) & (E[J[a, b]] == J[E[a], E[b]]), (a, b))
    _rec(ax, "H3", np.bool_(A[top] == top and E[0] == 0), ())
    _rec(ax, "H4", (A[E[x]] == E[x]) & (E[A[x]] == A[x]), (x,))
    _rec(ax, "H5", E[Mt[E[a], b]] == Mt[E[a], E[b]], (a, b))

    lem = Report("monadic Heyting consequences", labels=H.labels)
    _rec(lem, "monotone", ~LEQ[a, b] | (LEQ[A[a], A[b]] & LEQ[E[a], E[b]]), (a, b))
    _rec(lem, "forall(a -> b) <= forall a -> forall b", LEQ[A[I[a, b]], I[A[a], A[b]]], (a, b))
    _rec(lem, "idempotent", (A[A[x]] == A[x]) & (E[E[x]] == E[x]), (x,))
    _rec(lem, "forall(a -> forall b)", A[I[a, A[b]]] == I[E[a], A[b]], (a, b))
    _rec(lem, "forall(a -> exists b)", A[I[a, E[b]]] == I[E[a], E[b]], (a, b))

    join_ok = A[J[E[a], b]] == J[E[a], A[b]]
    pre = J[I[a, b], I[b, a]] == top
    return HeytingReport(
        ax,
        lem,
        [(int(a[i]), int(b[i])) for i in np.nonzero(~join_ok)[0]],
        [(int(a[i]), int(b[i])) for i in np.nonzero(~pre)[0]],
    )


def meet_as_mul(H: FiniteBLAlgebra) -> FiniteBLAlgebra:
    """The same lattice and implication with x * y := x ^ y."""
    return FiniteBLAlgebra(join=H.join, meet=H.meet, mul=H.meet, imp=H.imp, labels=H.labels)


def brute_force_monadic_heyting(H: FiniteBLAlgebra) -> list[QuantifierPair]:
    """All pairs satisfying H1-H5, searched over monotone idempotent
    interior/closure maps (H1-H5 force both properties)."""
    check = check_heyting_reduct(H)
    if not check.ok:
        raise PreconditionError("not a Heyting algebra", witness=check.violations()[0].witness)
    found = []
    for f in _closure_operators(H, deflationary=True):
        for e in _closure_operators(H, deflationary=False):
            q = QuantifierPair(f, e)
            if check_monadic_heyting(H, q).ok:
                found.append(q)
    return sorted(found, key=QuantifierPair.key)


def is_monadic_godel(M: MonadicBLAlgebra) -> bool:
    B = M.base
    return B.mul == B.meet and is_bl_algebra(B) and check_mbl_axioms(M).ok


def check_godel_coincidence(corpus: Iterable[tuple[FiniteBLAlgebra, QuantifierPair]]) -> Report:
    """Both inclusions between monadic Goedel algebras and prelinear monadic
    Heyting algebras satisfying forall(exists x v y) = exists x v forall y.

    Members that fall on neither side are counted but not failures. The
    witness of a failure is the member's position in the corpus.
    """
    report = Report("Goedel / Heyting coincidence")
    fwd, bwd = [], []
    n_godel = n_heyting = n_neither = 0
    for i, (H, q) in enumerate(corpus):
        H = meet_as_mul(H)
        M = MonadicBLAlgebra(H, q)
        godel = is_monadic_godel(M)
        if check_heyting_reduct(H).ok:
            hr = check_monadic_heyting(H, q)
            heyting = hr.ok and hr.prelinear and hr.satisfies_join_law
        else:
            heyting = False
        n_godel += godel
        n_heyting += heyting
        n_neither += not (godel or heyting)
        if godel and not heyting:
            fwd.append((i,))
        if heyting and not godel:
            bwd.append((i,))
    report.record("monadic Goedel => prelinear monadic Heyting with the join law", fwd)
    report.record("prelinear monadic Heyting with the join law => monadic Goedel", bwd)
    report.info["counts"] = {"godel": n_godel, "heyting_join_law": n_heyting, "neither": n_neither}
    return report


def delta_nabla(A: FiniteBLAlgebra) -> QuantifierPair:
    """forall = Delta (1 only at 1), exists = Nabla (0 only at 0)."""
    top = A.top
    return QuantifierPair(
        [top if a == top else 0 for a in range(A.size)],
        [0 if a == 0 else top for a in range(A.size)],
    )


# ---------------------------------------------------------------------------
# monadic product chains


def check_product_lemma(M: MonadicBLAlgebra) -> Report:
    """The three facts about a non-trivial totally ordered monadic product algebra."""
    B = M.base
    A, E, T, I = M.A, M.E, B.T, B.I
    top = B.top
    x = np.arange(B.size)
    report = Report("product chain lemma", labels=B.labels)
    _rec(report, "exists(exists a -> a) = 1", E[I[E[x], x]] == top, (x,))
    _rec(report, "forall a = 0, a != 0 => exists a = 1", (x == 0) | (A[x] != 0) | (E[x] == top), (x,))
    inside = [u for u in range(B.size) if A[u] != 0]
    bad = []
    if top not in inside:
        bad.append((top,))
    for u in inside:
        for v in inside:
            if T[u, v] not in inside or I[u, v] not in inside:
                bad.append((u, v))
            for w in inside:
                if T[u, w] == T[v, w] and u != v:
                    bad.append((u, v, w))
    report.record("{u: forall u != 0} is a cancellative hoop", bad)
    return report


def check_product_chain_triviality(corpus: Iterable[FiniteBLAlgebra]) -> Report:
    report = Report("product chain triviality")
    for i, A in enumerate(corpus):
        cls = classify(A)
        if not (cls.product and cls.chain):
            raise PreconditionError(
                f"corpus member {i} is not a product chain ({sorted(cls.flags())})", witness=(i,)
            )
        allowed = {QuantifierPair.identity(A.size), delta_nabla(A)}
        found = enumerate_monadic_structures(A)
        report.record(
            f"#{i} (size {A.size}): only trivial quantifiers",
            [(i, j) for j, q in enumerate(found) if q not in allowed],
        )
        if A.size > 1:
            bad = [(i, j) for j, q in enumerate(found) if not check_product_lemma(MonadicBLAlgebra(A, q)).ok]
            report.record(f"#{i} (size {A.size}): lemma", bad)
    return report


# ---------------------------------------------------------------------------
# hoops and MV-closure


@dataclass(frozen=True)
class HoopTable:
    mul: tuple[tuple[int, ...], ...]
    imp: tuple[tuple[int, ...], ...]
    top: int
    bottom: int | None = None
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.mul)
        object.__setattr__(self, "mul", _table("mul", self.mul, n, 2))
        object.__setattr__(self, "imp", _table("imp", self.imp, n, 2))
        if not 0 <= self.top < n:
            raise StructuralError("top index out of range")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def size(self) -> int:
        return len(self.mul)

    @property
    def bounded(self) -> bool:
        return self.bottom is not None

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    @cached_property
    def T(self) -> np.ndarray:
        return np.asarray(self.mul, dtype=np.int64)

    @cached_property
    def I(self) -> np.ndarray:
        return np.asarray(self.imp, dtype=np.int64)

    @cached_property
    def LEQ(self) -> np.ndarray:
        return self.I == self.top

    @classmethod
    def trivial(cls) -> "HoopTable":
        return cls(((0,),), ((0,),), 0, labels=("1",))

    @classmethod
    def from_algebra(cls, A: FiniteBLAlgebra, subset: Iterable[int] | None = None) -> "HoopTable":
        """Hoop reduct of A, or of the sub-hoop on ``subset``."""
        elems = sorted(subset) if subset is not None else list(range(A.size))
        pos = {e: i for i, e in enumerate(elems)}
        try:
            mul = [[pos[A.mul[a][b]] for b in elems] for a in elems]
            imp = [[pos[A.imp[a][b]] for b in elems] for a in elems]
        except KeyError as exc:
            raise PreconditionError(f"subset not closed under * and ->: {exc}") from None
        bottom = 0 if 0 in pos else None
        return cls(mul, imp, pos[A.top], bottom, labels=[A.label(e) for e in elems])

    def oplus(self, a: int, b: int) -> int:
        return self.imp[self.imp[a][self.mul[a][b]]][b]


def check_wajsberg_hoop(H: HoopTable) -> Report:
    report = Report("Wajsberg hoop", labels=H.labels)
    T, I, top = H.T, H.I, H.top
    x = np.arange(H.size)
    a, b = _grid(H.size, 2)
    p, q, r = _grid(H.size, 3)
    _rec(report, "mul commutative", T[a, b] == T[b, a], (a, b))
    _rec(report, "mul associative", T[T[p, q], r] == T[p, T[q, r]], (p, q, r))
    _rec(report, "mul unit", T[x, top] == x, (x,))
    _rec(report, "x -> x = 1", I[x, x] == top, (x,))
    _rec(report, "x * (x -> y) = y * (y -> x)", T[a, I[a, b]] == T[b, I[b, a]], (a, b))
    _rec(report, "x -> (y -> z) = x * y -> z", I[p, I[q, r]] == I[T[p, q], r], (p, q, r))
    _rec(report, "(x -> y) -> y = (y -> x) -> x", I[I[a, b], b] == I[I[b, a], a], (a, b))
    return report


def is_cancellative(H: HoopTable) -> bool:
    T = H.T
    n = H.size
    return all(len(set(T[:, w].tolist())) == n for w in range(n))


def _chain_rank(H: HoopTable) -> list[int]:
    LEQ = H.LEQ
    if not all(LEQ[a, b] or LEQ[b, a] for a in range(H.size) for b in range(H.size)):
        raise PreconditionError("hoop is not totally ordered")
    return sorted(range(H.size), key=lambda a: int(LEQ[:, a].sum()))


def mv_closure(H: HoopTable, q: QuantifierPair | None = None) -> MMVAlgebra:
    """MV-closure on H x {0,1}, optionally with lifted quantifiers.

    Element order: (a, 0) for a running down H, then (a, 1) for a running up,
    so (1, 0) is the zero and (1, 1) the unit. With no quantifiers the
    identity is used for exists. The result is not checked; run
    :func:`check_mmv_axioms` on it.
    """
    rep = check_wajsberg_hoop(H)
    if not rep.ok:
        v = rep.violations()[0]
        raise PreconditionError(f"not a Wajsberg hoop: {v.law} fails", witness=v.witness)
    up = _chain_rank(H)
    n = H.size
    carrier = [(a, 0) for a in reversed(up)] + [(a, 1) for a in up]
    idx = {c: i for i, c in enumerate(carrier)}

    def plus(u, v):
        (a, i), (b, j) = u, v
        if i == 1 and j == 1:
            return (H.oplus(a, b), 1)
        if i == 1:
            return (H.imp[b][a], 1)
        if j == 1:
            return (H.imp[a][b], 1)
        return (H.mul[a][b], 0)

    oplus = [[idx[plus(u, v)] for v in carrier] for u in carrier]
    neg = [idx[(a, 1 - i)] for a, i in carrier]
    if q is None:
        exists = list(range(2 * n))
    else:
        if len(q.forall) != n:
            raise InvalidParameter("quantifier tables do not match the hoop size")
        exists = [idx[(q.exists[a], 1)] if i == 1 else idx[(q.forall[a], 0)] for a, i in carrier]
    labels = [("~" if i == 0 else "") + H.label(a) for a, i in carrier]
    return MMVAlgebra(oplus, neg, exists, zero=idx[(H.top, 0)], labels=labels)


def lifted_forall(H: HoopTable, q: QuantifierPair) -> list[int]:
    """The forall of :func:`mv_closure`, written out directly for comparison
    with not exists not."""
    up = _chain_rank(H)
    carrier = [(a, 0) for a in reversed(up)] + [(a, 1) for a in up]
    idx = {c: i for i, c in enumerate(carrier)}
    return [idx[(q.forall[a], 1)] if i == 1 else idx[(q.exists[a], 0)] for a, i in carrier]
