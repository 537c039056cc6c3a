from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from monadic_bl.algebra import make_mv_chain, ordinal_sum
from monadic_bl.corpus import monadic_family
from monadic_bl.logic.corpus import FORMULA_TEXTS, FORMULAS
from monadic_bl.logic.formula import (
    And,
    Box,
    Const0,
    Const1,
    Dia,
    Equiv,
    FormulaSyntaxError,
    Fuse,
    Imp,
    Neg,
    Or,
    Var,
    modal_depth,
    parse_formula,
    to_text,
    variables,
)
from monadic_bl.logic.semantics import (
    KripkeModel,
    check_kripke_agreement,
    eval_algebraic,
    eval_all,
    eval_kripke,
    eval_kripke_worlds,
    functional_batch,
    is_valid_in,
    kripke_batch,
    kripke_satisfies,
    kripke_to_functional,
)
from monadic_bl.logic.validity import (
    AXIOM_SOURCES,
    NU_CATALOGUE,
    axiom_suite,
    check_algebraization,
    check_derived_rules,
    check_rule_preservation,
    check_validity,
    s5_instances,
    s5_prime_instances,
)
from monadic_bl.monadic import MonadicBLAlgebra, QuantifierPair, build_functional
from monadic_bl.report import InvalidParameter, PreconditionError

p, q = Var("p"), Var("q")
NON_THEOREM = "[](p*p) <-> []p*[]p"
SMALL = [m.algebra for m in monadic_family(4)]

formulas = st.recursive(
    st.one_of(st.sampled_from([Var("p"), Var("q"), Var("r")]), st.just(Const0()), st.just(Const1())),
    lambda sub: st.one_of(
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Fuse, sub, sub),
        st.builds(Imp, sub, sub),
        st.builds(Box, sub),
        st.builds(Dia, sub),
    ),
    max_leaves=10,
)


class TestParser:
    def test_box_axiom_shape(self):
        assert parse_formula("[]p -> p") == Imp(Box(p), p)

    def test_constant(self):
        assert parse_formula("1") == Const1()
        assert parse_formula("0") == Const0()

    def test_dia3_shape(self):
        assert parse_formula("<>(p*p) <-> <>p * <>p") == Equiv(Dia(Fuse(p, p)), Fuse(Dia(p), Dia(p)))

    def test_precedence(self):
        assert parse_formula("p -> q -> p") == Imp(p, Imp(q, p))
        assert parse_formula("p | q & p * q") == Or(p, And(q, Fuse(p, q)))
        assert parse_formula("~[]p") == Neg(Box(p))

    def test_unicode_aliases(self):
        assert parse_formula("□p → ◇p") == Imp(Box(p), Dia(p))
        assert parse_formula("p ∧ q ∨ ¬p") == Or(And(p, q), Neg(p))

    @pytest.mark.parametrize("text,pos", [("p &&", 3), ("(p", 2), ("p q", 2), ("", 0), ("p $ q", 2)])
    def test_errors_carry_position(self, text, pos):
        with pytest.raises(FormulaSyntaxError) as exc:
            parse_formula(text)
        assert exc.value.position == pos
        assert exc.value.expected

    def test_helpers(self):
        f = parse_formula("[](p -> <>q) * r")
        assert variables(f) == ["p", "q", "r"]
        assert modal_depth(f) == 2

    @given(formulas)
    def test_print_parse_fixpoint(self, f):
        text = to_text(f)
        g = parse_formula(text)
        assert g == f
        assert to_text(g) == text

    def test_corpus(self):
        assert len(FORMULAS) == 50 == len(set(FORMULAS))
        assert all(set(variables(f)) <= {"p", "q"} for f in FORMULAS)
        assert [parse_formula(t) for t in FORMULA_TEXTS] == list(FORMULAS)


class TestAlgebraicEvaluation:
    def test_box_of_zero2(self, golden):
        assert golden.label(eval_algebraic(golden, Box(p), {"p": "0_2"})) == "1/2"

    def test_tautology(self):
        for M in SMALL:
            assert is_valid_in(M, parse_formula("p -> p"))

    def test_non_theorem_value(self, golden):
        v = eval_algebraic(golden, parse_formula(NON_THEOREM), {"p": 2})
        assert golden.label(v) == "1/2"

    def test_missing_variable(self, golden):
        with pytest.raises(InvalidParameter):
            eval_algebraic(golden, parse_formula("p * q"), {"p": 1})

    @given(formulas, st.sampled_from(SMALL), st.data())
    def test_vectorised_matches_pointwise(self, f, M, data):
        names = ["p", "q", "r"]
        vals = eval_all(M, f, names)
        idx = data.draw(st.integers(0, M.size ** 3 - 1))
        v = {"p": idx // M.size**2, "q": (idx // M.size) % M.size, "r": idx % M.size}
        assert vals[idx] == eval_algebraic(M, f, v)


class TestKripke:
    def model(self):
        return KripkeModel(2, make_mv_chain(3), {"p": (1, 2)})

    def test_box_and_diamond(self):
        K = self.model()
        assert eval_kripke_worlds(K, Box(p)) == (1, 1)
        assert eval_kripke_worlds(K, Dia(p)) == (2, 2)
        assert eval_kripke(K, Const1(), 0) == 2
        assert kripke_satisfies(K, Dia(p)) and not kripke_satisfies(K, Box(p))

    def test_bad_world(self):
        with pytest.raises(InvalidParameter):
            eval_kripke(self.model(), p, 2)

    def test_refuses_nonchain(self):
        from monadic_bl.algebra import direct_product

        with pytest.raises(PreconditionError):
            KripkeModel(1, direct_product(make_mv_chain(2), make_mv_chain(2)), {})

    def test_to_functional(self):
        F, env = kripke_to_functional(self.model())
        assert F.points[env["p"]] == (1, 2)
        assert F.points[eval_algebraic(F, Box(p), env)] == (1, 1)
        K = KripkeModel(2, make_mv_chain(3), {"p": (1, 2), "q": (0, 1)})
        assert check_kripke_agreement(K, FORMULAS) == []

    def test_constant_valuation(self):
        F, _ = kripke_to_functional(KripkeModel(3, make_mv_chain(3), {"p": (1, 1, 1)}))
        assert F.q == QuantifierPair.identity(F.size)

    def test_boolean_generated(self):
        F, _ = kripke_to_functional(KripkeModel(2, make_mv_chain(2), {"p": (1, 0)}))
        assert F.size == 4

    @given(
        st.sampled_from([make_mv_chain(2), make_mv_chain(3), ordinal_sum([2, 2]), ordinal_sum([3, 2])]),
        st.integers(1, 3),
        st.data(),
    )
    def test_agreement_random_models(self, A, X, data):
        vals = st.tuples(*[st.integers(0, A.size - 1)] * X)
        K = KripkeModel(X, A, {"p": data.draw(vals), "q": data.draw(vals)})
        assert check_kripke_agreement(K, FORMULAS[:20]) == []

    def test_batch_agreement(self):
        A = make_mv_chain(3)
        F = build_functional(A, 2)
        for f in FORMULAS[:10]:
            assert np.array_equal(kripke_batch(A, 2, f, ["p", "q"]), functional_batch(F, f, ["p", "q"]))


class TestValidity:
    def test_box1_valid(self):
        assert check_validity("[]p -> p", SMALL).valid

    def test_non_theorem_countermodel(self, golden):
        res = check_validity(NON_THEOREM, SMALL)
        assert not res.valid
        assert res.algebra.q == golden.q and res.algebra.base.mul == golden.base.mul
        assert res.assignment == {"p": 2}
        assert res.algebra.label(res.value) == "1/2"

    def test_zero(self):
        res = check_validity("0", SMALL)
        # the one-element algebra comes first and satisfies 0 = 1
        assert not res.valid and res.algebra_index == 1 and res.assignment == {}
        assert res.algebra.size == 2

    def test_empty_family(self):
        with pytest.raises(InvalidParameter):
            check_validity("p", [])

    def test_parallel_is_deterministic(self):
        a = check_validity(NON_THEOREM, SMALL, jobs=1)
        b = check_validity(NON_THEOREM, SMALL, jobs=4)
        assert a.to_dict() == b.to_dict()

    @given(st.sampled_from(FORMULAS), st.integers(1, len(SMALL)))
    def test_monotone_in_family(self, f, k):
        if not check_validity(f, SMALL[:k]).valid:
            assert not check_validity(f, SMALL).valid


class TestAxiomSuite:
    def test_instance_counts(self):
        counts = {k: len(v) for k, v in s5_instances().items()}
        assert counts == {"box1": 18, "dia1": 18, "box2": 108, "box3": 108, "dia2": 108, "dia3": 18}
        prime = {k: len(v) for k, v in s5_prime_instances().items()}
        assert prime == {"A1": 18, "A2": 180, "A3": 180, "A4": 180, "A5": 18}
        for insts in [*s5_instances().values(), *s5_prime_instances().values()]:
            assert all(modal_depth(f) <= 2 and set(variables(f)) <= {"p", "q"} for f in insts)

    def test_named_instances(self):
        insts = s5_instances()
        assert parse_formula("[](<>q | p) -> <>q | []p") in insts["box3"]
        assert parse_formula("[]p -> p") in insts["box1"]

    def test_every_schema_has_a_source(self):
        assert set(AXIOM_SOURCES) == set(s5_instances()) | set(s5_prime_instances())
        assert len(NU_CATALOGUE) == 6

    def test_suite_on_small_family(self):
        rep = axiom_suite(SMALL[:8], rule_corpus=FORMULAS[:15])
        assert rep.ok and "Nec" in rep.laws and "MP" in rep.laws

    def test_suite_detects_broken_quantifiers(self):
        bad = MonadicBLAlgebra(make_mv_chain(3), QuantifierPair([0, 0, 2], [0, 2, 2]))
        assert not axiom_suite([bad]).ok

    def test_rules(self, golden):
        assert check_rule_preservation([golden], [parse_formula("p -> p"), p]).ok
        assert is_valid_in(golden, parse_formula("<>p <-> []<>p"))
        assert check_derived_rules(SMALL, FORMULAS[:20]).ok

    def test_algebraization(self, golden):
        pairs = [(p, p), (Box(p), Dia(p))] + list(zip(FORMULAS[:25], FORMULAS[25:]))
        assert check_algebraization(SMALL, pairs).ok
        v = {"p": 2}
        assert eval_algebraic(golden, Box(p), v) != eval_algebraic(golden, Dia(p), v)
        assert golden.label(eval_algebraic(golden, Equiv(Box(p), Dia(p)), v)) == "1/2"
