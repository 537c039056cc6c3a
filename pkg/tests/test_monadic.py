from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

from monadic_bl.algebra import (
    direct_product,
    enumerate_subalgebras,
    make_godel_chain,
    make_mv_chain,
    ordinal_sum,
)
from monadic_bl.corpus import bl_algebras_up_to
from monadic_bl.monadic import (
    DERIVED_IDENTITIES,
    MonadicBLAlgebra,
    QuantifierPair,
    brute_force_monadic_structures,
    build_functional,
    check_derived_identities,
    check_mbl_axioms,
    check_image_identities,
    check_s2,
    check_s2_chain,
    check_s2_double_prime,
    check_s2_prime,
    constant_elements,
    enumerate_monadic_structures,
    is_m_relatively_complete,
    probe_identity,
    quantifiers_from_subalgebra,
    search_m4_independence,
)
from monadic_bl.report import BoundExceeded, PreconditionError, StructuralError

from conftest import block_lists

X_SQ = "forall(x*x) = forall x * forall x"


def test_golden_axioms_and_identities(golden):
    assert check_mbl_axioms(golden).summary() == "MBL axioms: PASS (5/5)"
    rep = check_derived_identities(golden)
    assert rep.ok and rep.total == 32 and list(rep.laws) == list(DERIVED_IDENTITIES)
    assert check_image_identities(golden).ok


def test_golden_non_theorem(golden):
    rep = probe_identity(golden, X_SQ)
    z2 = golden.base.element("0_2")
    assert [v.witness for v in rep.violations()] == [(z2,)]
    B, A = golden.base, golden.forall
    assert B.label(A[B.mul[z2][z2]]) == "1/2"
    assert B.label(B.mul[A[z2]][A[z2]]) == "0_1"


def test_identity_quantifiers_always_pass():
    for _, A in bl_algebras_up_to(4):
        M = MonadicBLAlgebra(A, QuantifierPair.identity(A.size))
        assert check_mbl_axioms(M).ok
        assert check_derived_identities(M).ok


def test_m5_failure_on_l3():
    M = MonadicBLAlgebra(make_mv_chain(3), QuantifierPair([0, 0, 2], [0, 2, 2]))
    rep = check_mbl_axioms(M)
    assert rep.failed_laws == ["M5"]
    assert [v.witness for v in rep.violations("M5")] == [(1,)]


def test_table_length_checked():
    with pytest.raises(StructuralError):
        MonadicBLAlgebra(make_mv_chain(3), QuantifierPair([0, 2], [0, 2]))


class TestRelativeCompleteness:
    def test_golden_image(self):
        A = ordinal_sum([3, 2])
        assert is_m_relatively_complete(A, {0, 1, 3})
        q = quantifiers_from_subalgebra(A, {0, 1, 3})
        assert q == QuantifierPair([0, 1, 1, 3], [0, 1, 3, 3])

    def test_l3_boolean_part(self):
        res = is_m_relatively_complete(make_mv_chain(3), {0, 2})
        assert not res
        assert (res.condition, res.witness) == ("s3", (1, 0))
        with pytest.raises(PreconditionError) as exc:
            quantifiers_from_subalgebra(make_mv_chain(3), {0, 2})
        assert exc.value.witness == (1, 0)

    def test_whole_algebra(self):
        for _, A in bl_algebras_up_to(4):
            assert is_m_relatively_complete(A, range(A.size))
            assert quantifiers_from_subalgebra(A, range(A.size)) == QuantifierPair.identity(A.size)

    def test_godel_four(self):
        q = quantifiers_from_subalgebra(make_godel_chain(4), {0, 2, 3})
        assert q == QuantifierPair([0, 0, 2, 3], [0, 2, 2, 3])

    def test_not_a_subalgebra(self):
        with pytest.raises(PreconditionError):
            is_m_relatively_complete(make_mv_chain(3), {1, 2})

    def test_s2_variants_agree(self):
        for _, A in bl_algebras_up_to(5):
            for C in enumerate_subalgebras(A):
                full = check_s2(A, C) is None
                assert full == (check_s2_prime(A, C) is None)
                assert full == (check_s2_double_prime(A, C) is None)
                if A.is_chain:
                    assert full == (check_s2_chain(A, C) is None)


class TestEnumeration:
    def test_counts(self):
        assert enumerate_monadic_structures(make_mv_chain(3)) == [QuantifierPair.identity(3)]
        assert len(enumerate_monadic_structures(ordinal_sum([3, 2]))) == 2
        assert len(enumerate_monadic_structures(make_godel_chain(4))) == 4

    def test_brute_examples(self):
        assert brute_force_monadic_structures(make_mv_chain(3)) == [QuantifierPair.identity(3)]
        assert brute_force_monadic_structures(make_mv_chain(2)) == [QuantifierPair.identity(2)]

    @pytest.mark.parametrize("name,A", bl_algebras_up_to(5))
    def test_routes_agree_small(self, name, A):
        assert set(enumerate_monadic_structures(A)) == set(brute_force_monadic_structures(A))

    @pytest.mark.parametrize(
        "A",
        [ordinal_sum(b) for b in ([6], [3, 2, 2, 2], [2, 4, 2], [2, 2, 2, 2, 2])]
        + [direct_product(make_mv_chain(3), make_mv_chain(2))],
        ids=["L6", "L3+L2+L2+L2", "L2+L4+L2", "G6", "L3xL2"],
    )
    def test_routes_agree_size_six(self, A):
        assert set(enumerate_monadic_structures(A)) == set(brute_force_monadic_structures(A, jobs=2))

    def test_brute_bound(self):
        with pytest.raises(BoundExceeded):
            brute_force_monadic_structures(make_mv_chain(7))
        assert len(brute_force_monadic_structures(make_godel_chain(7), bound=7)) == 32

    @given(block_lists(max_size=6))
    def test_image_round_trip(self, blocks):
        A = ordinal_sum(blocks)
        for q in enumerate_monadic_structures(A):
            M = MonadicBLAlgebra(A, q)
            assert check_mbl_axioms(M).ok and check_derived_identities(M).ok
            assert set(q.forall) == set(q.exists)
            assert quantifiers_from_subalgebra(A, q.image) == q
            x = np.arange(A.size)
            assert A.LEQ[M.A, x].all() and A.LEQ[x, M.E].all()
            assert np.array_equal(M.A[M.A], M.A) and np.array_equal(M.E[M.E], M.E)


def test_m4_search_reports_finite_witnesses():
    assert search_m4_independence(make_mv_chain(3)) == []
    found = search_m4_independence(ordinal_sum([3, 2]))
    assert len(found) == 3
    for q in found:
        assert check_mbl_axioms(MonadicBLAlgebra(ordinal_sum([3, 2]), q)).failed_laws == ["M4"]
    with pytest.raises(BoundExceeded):
        search_m4_independence(make_mv_chain(6))


class TestFunctional:
    def test_boolean_square(self):
        F = build_functional(make_mv_chain(2), 2)
        assert F.size == 4
        f = F.index_of((1, 0))
        assert F.points[F.forall[f]] == (0, 0)
        assert F.points[F.exists[f]] == (1, 1)

    def test_l3_square(self):
        F = build_functional(make_mv_chain(3), 2)
        assert F.size == 9
        assert F.points[F.forall[F.index_of((1, 2))]] == (1, 1)
        assert probe_identity(F, "forall(x * forall y) = forall x * forall y").ok
        assert check_mbl_axioms(F).ok
        assert set(F.image) == constant_elements(F)

    def test_generated(self):
        F = build_functional(make_mv_chain(3), 2, generators=[(1, 2)])
        assert check_mbl_axioms(F).ok and F.size == 9
        G = build_functional(make_mv_chain(2), 3, generators=[])
        assert G.size == 2

    def test_refuses_nonchain(self):
        with pytest.raises(PreconditionError):
            build_functional(direct_product(make_mv_chain(2), make_mv_chain(2)), 2)
