"""Finite-model workbench for monadic BL-algebras and the modal logic S5(BL)."""

from .algebra import (
    FiniteBLAlgebra,
    OrdinalSumSpec,
    check_bl_axioms,
    classify,
    direct_product,
    enumerate_subalgebras,
    make_godel_chain,
    make_mv_chain,
    ordinal_sum,
    stack,
)
from .chains import IndexChainSpec, build_chain, crossvalidate_enumeration, decompose_chain
from .monadic import (
    MonadicBLAlgebra,
    QuantifierPair,
    brute_force_monadic_structures,
    build_functional,
    check_derived_identities,
    check_mbl_axioms,
    enumerate_monadic_structures,
)
from .report import (
    BoundExceeded,
    InternalError,
    InvalidParameter,
    MBLError,
    PreconditionError,
    Report,
    StructuralError,
)

__version__ = "0.1.0"
