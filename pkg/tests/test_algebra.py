from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given

from monadic_bl.algebra import (
    FiniteBLAlgebra,
    OrdinalSumSpec,
    check_bl_axioms,
    classify,
    direct_product,
    enumerate_subalgebras,
    heyting_algebra,
    is_subalgebra,
    make_godel_chain,
    make_mv_chain,
    ordinal_sum,
    stack,
    trivial_algebra,
)
from monadic_bl.report import InvalidParameter, StructuralError

from conftest import block_lists


def tables(A):
    return (A.join, A.meet, A.mul, A.imp)


class TestChains:
    def test_boolean_chain(self):
        B = make_mv_chain(2)
        assert B.size == 2
        assert B.neg(0) == 1 and B.neg(1) == 0

    def test_l3_operations(self):
        L3 = make_mv_chain(3)
        half = L3.element("1/2")
        assert L3.mul[half][half] == 0
        assert L3.imp[half][0] == half
        assert classify(L3).flags() == {"chain", "mv"}

    def test_godel_chain(self):
        G3 = make_godel_chain(3)
        assert tables(make_godel_chain(2)) == tables(make_mv_chain(2))
        assert G3.imp[1][0] == 0
        assert all(G3.mul[a][a] == a for a in range(3))
        assert classify(G3).flags() == {"chain", "godel"}

    def test_two_element_chain_in_every_class(self):
        assert classify(make_mv_chain(2)).flags() == {"chain", "mv", "godel", "product"}

    @pytest.mark.parametrize("k", [0, 1, -3])
    def test_bad_size(self, k):
        with pytest.raises(InvalidParameter):
            make_mv_chain(k)
        with pytest.raises(InvalidParameter):
            make_godel_chain(k)

    @pytest.mark.parametrize("k", range(3, 8))
    def test_godel_product_flag_only_for_two(self, k):
        assert not classify(make_godel_chain(k)).product


class TestOrdinalSum:
    def test_golden_chain(self):
        A = ordinal_sum([3, 2])
        assert A.names == ("0_1", "1/2", "0_2", "1")
        z2, h = A.element("0_2"), A.element("1/2")
        assert A.mul[z2][z2] == z2
        assert A.mul[h][z2] == h
        assert A.imp[z2][h] == h
        assert A.is_chain and check_bl_axioms(A).ok

    @pytest.mark.parametrize("k", range(2, 8))
    def test_single_block_is_mv_chain(self, k):
        assert tables(ordinal_sum([k])) == tables(make_mv_chain(k))

    def test_boolean_blocks_give_godel_chain(self):
        assert tables(ordinal_sum([2, 2, 2])) == tables(make_godel_chain(4))

    @pytest.mark.parametrize("blocks", [[], [1], [3, 0]])
    def test_bad_spec(self, blocks):
        with pytest.raises(InvalidParameter):
            OrdinalSumSpec(blocks)

    @given(block_lists())
    def test_size_formula_and_axioms(self, blocks):
        A = ordinal_sum(blocks)
        assert A.size == sum(k - 1 for k in blocks) + 1
        assert A.is_chain
        assert check_bl_axioms(A).ok


class TestAxiomChecker:
    def test_corrupted_implication(self):
        L3 = make_mv_chain(3)
        imp = [list(r) for r in L3.imp]
        imp[1][0] = 2
        bad = FiniteBLAlgebra(L3.join, L3.meet, L3.mul, imp, labels=L3.names)
        rep = check_bl_axioms(bad)
        assert not rep.ok
        assert {v.witness for v in rep.violations("residuation")} == {(2, 1, 0)}
        assert {v.witness for v in rep.violations("divisibility")} == {(1, 0)}

    def test_reports_every_failure(self):
        L3 = make_mv_chain(3)
        mul = [[0, 0, 0], [0, 1, 1], [0, 1, 2]]  # min: breaks residuation with the MV implication
        rep = check_bl_axioms(FiniteBLAlgebra(L3.join, L3.meet, mul, L3.imp))
        assert len(rep.violations()) > 1

    def test_malformed_table(self):
        L3 = make_mv_chain(3)
        with pytest.raises(StructuralError, match="mul"):
            FiniteBLAlgebra(L3.join, L3.meet, [[0, 0], [0, 1]], L3.imp)
        with pytest.raises(StructuralError):
            FiniteBLAlgebra(L3.join, L3.meet, L3.mul, [[0, 0, 7], [0, 1, 1], [0, 1, 2]])

    def test_nonchain_constructions(self):
        P = direct_product(make_mv_chain(3), make_mv_chain(2))
        assert P.size == 6 and not P.is_chain and check_bl_axioms(P).ok
        S = stack(make_mv_chain(2), direct_product(make_mv_chain(2), make_mv_chain(2)))
        assert S.size == 5 and check_bl_axioms(S).ok
        assert check_bl_axioms(trivial_algebra()).ok

    def test_heyting_reduct_of_diamond(self):
        leq = [[a <= b or a == 0 or b == 3 for b in range(4)] for a in range(4)]
        leq[1][2] = leq[2][1] = False
        H = heyting_algebra(leq)
        assert classify(H).godel and not H.is_chain


class TestSubalgebras:
    def test_boolean(self):
        assert enumerate_subalgebras(make_mv_chain(2)) == [frozenset({0, 1})]

    def test_l3(self):
        assert enumerate_subalgebras(make_mv_chain(3)) == [frozenset({0, 2}), frozenset({0, 1, 2})]

    def test_godel_any_subset(self):
        subs = enumerate_subalgebras(make_godel_chain(4))
        assert len(subs) == 4
        assert all({0, 3} <= s for s in subs)

    @given(block_lists(max_size=6))
    def test_matches_subset_scan(self, blocks):
        A = ordinal_sum(blocks)
        brute = [
            frozenset(s)
            for k in range(A.size + 1)
            for s in itertools.combinations(range(A.size), k)
            if is_subalgebra(A, s)
        ]
        assert set(enumerate_subalgebras(A)) == set(brute)
        for s in enumerate_subalgebras(A):
            assert check_bl_axioms(A.restrict(s)).ok

    @given(block_lists())
    def test_residuation_everywhere(self, blocks):
        A = ordinal_sum(blocks)
        T, I, LEQ = A.T, A.I, A.LEQ
        a, b, c = np.meshgrid(*[np.arange(A.size)] * 3, indexing="ij")
        assert np.array_equal(LEQ[T[a, b], c], LEQ[a, I[b, c]])
