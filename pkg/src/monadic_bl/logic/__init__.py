from .formula import (
    And,
    Box,
    Const0,
    Const1,
    Dia,
    Equiv,
    Formula,
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
from .semantics import (
    KripkeModel,
    eval_algebraic,
    eval_all,
    eval_kripke,
    eval_kripke_worlds,
    is_valid_in,
    kripke_satisfies,
    kripke_to_functional,
)
from .validity import ValidityResult, axiom_suite, check_validity, s5_instances, s5_prime_instances
