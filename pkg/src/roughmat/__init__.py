"""Covering-based rough set operators through boolean characteristic matrices,
and symmetric boolean matrix decomposition B = A·Aᵀ."""
from .approx import OpKind, cov_of, matrix_approx, oracle_approx
from .axioms import (
    AxiomResult,
    OperatorTable,
    check_fifth_upper,
    check_second_upper,
    check_sixth_upper,
    is_representable,
    singleton_matrix,
)
from .boolmat import (
    BoolMatrix,
    NotBooleanError,
    SetVec,
    ShapeError,
    TriMatrix,
    bool_product,
    leq,
    odot,
    predicates,
    to_boolean,
    transpose,
    union,
)
from .covering import (
    Covering,
    CoveringError,
    RelationError,
    SetFamily,
    Universe,
    covering_from_relation,
    gamma,
    gir,
    membership_matrix,
    neighborhoods,
    pi,
    reduct,
    validate_covering,
)
from .decompose import (
    Decomposition,
    ExactBoundError,
    NotDecomposableError,
    decompose_exact,
    decompose_greedy,
    decompose_paper,
    is_decomposable,
    maximal_subformulas,
    verify_decomposition,
)

__version__ = "0.1.0"
