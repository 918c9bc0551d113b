"""Exact scalar and linear algebra used by every other module."""
from .algebra import (
    QQ,
    AlgebraElement,
    EtaleAlgebra,
    EtaleElement,
    Q,
    QuotientAlgebra,
    RationalField,
    algebra_invert,
    cyclotomic_field,
    cyclotomic_polynomial,
    fixed_points_shift,
    is_rational,
    shift_apply,
    sigma,
)
from .matrix import (
    Matrix,
    determinant,
    inverse,
    kernel,
    kron,
    nilpotent_block_structure,
    nilpotent_jordan_matrix,
    rank,
    solve,
)

__all__ = [
    "QQ", "AlgebraElement", "EtaleAlgebra", "EtaleElement", "Q", "QuotientAlgebra",
    "RationalField", "algebra_invert", "cyclotomic_field", "cyclotomic_polynomial",
    "fixed_points_shift", "is_rational", "shift_apply", "sigma", "Matrix", "determinant", "inverse",
    "kernel", "kron", "nilpotent_block_structure", "nilpotent_jordan_matrix", "rank", "solve",
]
