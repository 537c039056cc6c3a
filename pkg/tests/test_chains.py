from __future__ import annotations

import pytest
from hypothesis import given

from monadic_bl.algebra import direct_product, make_mv_chain, ordinal_sum, trivial_algebra
from monadic_bl.chains import (
    IndexChainSpec,
    all_fixed_sets,
    build_chain,
    chain_identity_failures,
    check_chain_variety_identity,
    check_class_extremes,
    crossvalidate_enumeration,
    decompose_chain,
)
from monadic_bl.corpus import chain_corpus, golden_chain
from monadic_bl.monadic import (
    MonadicBLAlgebra,
    QuantifierPair,
    build_functional,
    check_mbl_axioms,
    enumerate_monadic_structures,
)
from monadic_bl.report import BoundExceeded, InvalidParameter, PreconditionError

from conftest import index_chain_specs


def identity_on(A):
    return MonadicBLAlgebra(A, QuantifierPair.identity(A.size))


class TestBuild:
    def test_golden_algebra(self):
        M = build_chain(IndexChainSpec((3, 2), frozenset({0, 2})))
        R = golden_chain()
        assert M.q == R.q and M.base.mul == R.base.mul

    def test_all_fixed_is_identity(self):
        M = build_chain(IndexChainSpec((3, 2), frozenset({0, 1, 2})))
        assert M.q == QuantifierPair.identity(4)

    def test_middle_blocks_collapse(self):
        M = build_chain(IndexChainSpec((2, 2, 2), frozenset({0, 3})))
        assert M.forall == (0, 0, 0, 3)
        assert M.exists == (0, 3, 3, 3)

    @pytest.mark.parametrize("fixed", [{1, 2}, {0, 1}, {0, 2, 5}])
    def test_invalid_fixed(self, fixed):
        with pytest.raises(InvalidParameter):
            IndexChainSpec((3, 2), frozenset(fixed))

    def test_json_shape(self):
        spec = IndexChainSpec((3, 2), frozenset({0, 2}))
        assert spec.to_dict() == {"blocks": [3, 2], "fixed": [0, 2]}
        assert IndexChainSpec.from_dict(spec.to_dict()) == spec

    def test_fixed_sets(self):
        assert all_fixed_sets(1) == [frozenset({0, 1})]
        assert len(all_fixed_sets(4)) == 8


class TestDecompose:
    def test_golden_algebra(self):
        d = decompose_chain(golden_chain())
        assert d.spec == IndexChainSpec((3, 2), frozenset({0, 2}))
        assert d.classes == ((0, 1), (2,), (3,))
        assert d.to_dict() == {"blocks": [3, 2], "fixed": [0, 2], "psi": [0, 1, 2, 3]}

    def test_identity_l3(self):
        assert decompose_chain(identity_on(make_mv_chain(3))).spec == IndexChainSpec((3,), frozenset({0, 1}))

    def test_boolean(self):
        assert decompose_chain(identity_on(make_mv_chain(2))).spec == IndexChainSpec((2,), frozenset({0, 1}))

    def test_refuses_non_chain(self):
        with pytest.raises(PreconditionError):
            decompose_chain(identity_on(direct_product(make_mv_chain(2), make_mv_chain(2))))

    def test_refuses_invalid_quantifiers(self):
        with pytest.raises(PreconditionError):
            decompose_chain(MonadicBLAlgebra(make_mv_chain(3), QuantifierPair([0, 0, 2], [0, 2, 2])))

    @given(index_chain_specs())
    def test_round_trip(self, spec):
        M = build_chain(spec)
        assert check_mbl_axioms(M).ok
        assert set(M.image) == {
            e for e in range(M.size) if M.forall[e] == e
        }
        d = decompose_chain(M)
        assert d.spec == spec and d.psi == tuple(range(M.size))
        assert build_chain(d.spec).q == M.q
        assert check_class_extremes(M).ok
        assert check_chain_variety_identity(M)

    def test_every_corpus_chain(self):
        for named in chain_corpus(5):
            M = named.algebra
            if M.size == 1:
                with pytest.raises(PreconditionError):
                    decompose_chain(M)
                continue
            d = decompose_chain(M)
            rebuilt = build_chain(d.spec)
            psi = d.psi
            assert all(rebuilt.forall[psi[a]] == psi[M.forall[a]] for a in range(M.size))
            assert all(rebuilt.exists[psi[a]] == psi[M.exists[a]] for a in range(M.size))


class TestChainIdentity:
    def test_functional_boolean_square_fails(self):
        F = build_functional(make_mv_chain(2), 2)
        x, y = F.index_of((1, 0)), F.index_of((0, 1))
        assert not check_chain_variety_identity(F)
        assert (x, y) in chain_identity_failures(F)
        assert F.points[F.forall[F.base.join[x][y]]] == (1, 1)
        assert F.points[F.base.join[F.forall[x]][F.forall[y]]] == (0, 0)

    def test_one_element(self):
        assert check_chain_variety_identity(identity_on(trivial_algebra()))


class TestCrossValidation:
    @pytest.mark.parametrize(
        "blocks,count", [([3, 2], 2), ([2, 2], 2), ([3], 1), ([2, 3, 2], 4), ([4, 2], 2), ([2, 2, 2, 2], 8)]
    )
    def test_routes_agree(self, blocks, count):
        rep = crossvalidate_enumeration(blocks, jobs=3)
        assert rep.ok
        assert rep.info["counts"] == {"subalgebras": count, "brute force": count, "index chains": count}

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            crossvalidate_enumeration([4, 4])

    @given(index_chain_specs(max_size=7))
    def test_count_formula(self, spec):
        assert len(enumerate_monadic_structures(ordinal_sum(list(spec.blocks)))) == 2 ** (spec.r - 1)
