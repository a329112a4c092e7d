from rope_algebra.linalg.core import (
    J,
    Matrix,
    RotationMatrix,
    SkewMatrix,
    StructureResiduals,
    as_rotation,
    as_skew,
    as_square,
    block_diag,
    commutator,
    determinant,
    mat_exp_dense,
    numerical_rank,
    rot2_block,
    skew_from_upper,
    skew_unit,
    structure_residuals,
    upper_pairs,
)

__all__ = [
    "J",
    "Matrix",
    "RotationMatrix",
    "SkewMatrix",
    "StructureResiduals",
    "as_rotation",
    "as_skew",
    "as_square",
    "block_diag",
    "commutator",
    "determinant",
    "mat_exp_dense",
    "numerical_rank",
    "rot2_block",
    "skew_from_upper",
    "skew_unit",
    "structure_residuals",
    "upper_pairs",
]
