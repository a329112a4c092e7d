# =============================================================================
# rope_algebra/generators/rotation.py - Position-Dependent Rotation Matrices
# =============================================================================

import numpy as np
from numpy.typing import ArrayLike

from rope_algebra.exceptions import DimensionError, StateError
from rope_algebra.generators.models import GeneratorSet, as_position, as_positions
from rope_algebra.linalg.core import RotationMatrix, mat_exp_dense


def rope_matrix_dense(gen: GeneratorSet, x: ArrayLike) -> RotationMatrix:
    """R(x) = exp(sum_i x^(i) B_i) through the dense exponential (the oracle path)."""
    pos = as_position(x, gen.n_axes)
    return mat_exp_dense(gen.generator_sum(pos))


def _require_plan(gen: GeneratorSet) -> None:
    if gen.block_plan is None:
        raise StateError("generator set has no block plan; use the dense path")


def block_angles(gen: GeneratorSet, positions: np.ndarray) -> np.ndarray:
    """Per-block rotation angles sum_i x^(i) lambda_{i,j}; shape (..., d/2)."""
    _require_plan(gen)
    return positions @ gen.coefficients


def rope_matrix_fast(gen: GeneratorSet, x: ArrayLike) -> RotationMatrix:
    """R(x) = q (+)_j rot2(sum_i x^(i) lambda_{i,j}) q^T from the block plan."""
    _require_plan(gen)
    pos = as_position(x, gen.n_axes)
    theta = block_angles(gen, pos)
    c, s = np.cos(theta), np.sin(theta)

    if gen.q is None:
        r = np.zeros((gen.d, gen.d))
        even = np.arange(0, gen.d, 2)
        odd = even + 1
        r[even, even] = c
        r[even, odd] = -s
        r[odd, even] = s
        r[odd, odd] = c
        return r

    # q @ blockdiag: rotate each column pair of q, then one product with q^T.
    u, v = gen.q[:, 0::2], gen.q[:, 1::2]
    qm = np.empty_like(gen.q)
    qm[:, 0::2] = u * c + v * s
    qm[:, 1::2] = v * c - u * s
    return qm @ gen.q.T


def rotate_vectors(gen: GeneratorSet, positions: ArrayLike, vectors: ArrayLike) -> np.ndarray:
    """Apply R(x_t) to v_t for a whole batch without forming any R(x_t)."""
    _require_plan(gen)
    pos = as_positions(positions, gen.n_axes)
    vec = np.asarray(vectors, dtype=float)
    if vec.ndim != 2 or vec.shape != (pos.shape[0], gen.d):
        raise DimensionError(
            "vectors must have shape (count, d)",
            detail={"shape": vec.shape, "expected": (pos.shape[0], gen.d)},
        )
    theta = block_angles(gen, pos)
    c, s = np.cos(theta), np.sin(theta)

    w = vec if gen.q is None else vec @ gen.q
    a, b = w[:, 0::2], w[:, 1::2]
    out = np.empty_like(w)
    out[:, 0::2] = a * c - b * s
    out[:, 1::2] = a * s + b * c
    return out if gen.q is None else out @ gen.q.T
