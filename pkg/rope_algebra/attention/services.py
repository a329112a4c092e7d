# =============================================================================
# rope_algebra/attention/services.py - RoPE Application and Attention Scores
# =============================================================================

import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from rope_algebra.config import settings
from rope_algebra.exceptions import DimensionError, InconsistencyError, StateError
from rope_algebra.generators.models import GeneratorSet
from rope_algebra.generators.rotation import rope_matrix_dense, rotate_vectors
from rope_algebra.linalg.core import as_square, block_diag, numerical_rank, rot2_block
from rope_algebra.attention.models import ScoreMatrix, TokenBatch
from rope_algebra.utils.logging import attention_logger as logger


def _check_batch(gen: GeneratorSet, batch: TokenBatch, role: str) -> None:
    if batch.dim != gen.d or batch.n_axes != gen.n_axes:
        raise DimensionError(
            f"{role} batch does not match the generator set",
            detail={"d": gen.d, "n_axes": gen.n_axes, "dim": batch.dim, "batch_axes": batch.n_axes},
        )


def rotate_batch(gen: GeneratorSet, batch: TokenBatch) -> TokenBatch:
    """v_t <- R(x_t) v_t; positions unchanged."""
    _check_batch(gen, batch, "token")
    if gen.block_plan is not None:
        rotated = rotate_vectors(gen, batch.positions, batch.vectors)
    else:
        logger.warning("no block plan, rotating through the dense path", d=gen.d)
        rotated = np.stack(
            [rope_matrix_dense(gen, x) @ v for x, v in zip(batch.positions, batch.vectors)]
        )
    return TokenBatch(positions=batch.positions, vectors=rotated)


def attention_scores(q_batch: TokenBatch, k_batch: TokenBatch) -> ScoreMatrix:
    """entries[s, t] = q_s . k_t."""
    if q_batch.dim != k_batch.dim:
        raise DimensionError(
            "query and key vectors differ in dimension",
            detail={"q": q_batch.dim, "k": k_batch.dim},
        )
    return q_batch.vectors @ k_batch.vectors.T


def relative_scores_oracle(gen: GeneratorSet, raw_q: TokenBatch, raw_k: TokenBatch) -> ScoreMatrix:
    """entries[s, t] = q_s^T R(x_t - x_s) k_t without rotating either batch."""
    _check_batch(gen, raw_q, "query")
    _check_batch(gen, raw_k, "key")
    scores = np.empty((raw_q.count, raw_k.count))
    for s, (xs, qs) in enumerate(zip(raw_q.positions, raw_q.vectors)):
        for t, (xt, kt) in enumerate(zip(raw_k.positions, raw_k.vectors)):
            scores[s, t] = qs @ rope_matrix_dense(gen, xt - xs) @ kt
    return scores


def recover_displacement(
    gen: GeneratorSet, r_rel: ArrayLike, tol: Optional[float] = None
) -> np.ndarray:
    """
    Invert R(dx) for dx inside the fundamental period.

    Conjugates back to block-diagonal form, reads each block angle with
    atan2 (range (-pi, pi]) and solves angles = Lambda^T dx by least squares.

    Args:
        gen: Generator set with a block plan
        r_rel: Relative rotation, typically R(x_t)^T R(x_s) or R(dx)
        tol: Largest accepted fit or block residual (default: RECOVERY_RESIDUAL_TOL)

    Returns:
        Displacement vector of length N

    Raises:
        StateError: the set has no block plan
        DimensionError: r_rel is not d x d
        InconsistencyError: the frequency matrix has rank below N, or r_rel
            is not R(dx) for any dx inside one period
    """
    tol = settings.RECOVERY_RESIDUAL_TOL if tol is None else tol
    if gen.block_plan is None:
        raise StateError("displacement recovery needs a block plan")
    r = as_square(r_rel, "relative rotation")
    if r.shape[0] != gen.d:
        raise DimensionError(
            "rotation dimension does not match generator set", detail={"d": gen.d, "r": r.shape[0]}
        )

    q = gen.basis_change
    frame = q.T @ r @ q
    angles = np.arctan2(frame[1::2, 0::2].diagonal(), frame[0::2, 0::2].diagonal())

    lam = gen.coefficients.T  # (d/2, N)
    rank = numerical_rank(lam)
    if rank < gen.n_axes:
        raise InconsistencyError(
            "frequency matrix is rank-deficient; displacement is not unique",
            detail={"rank": rank, "n_axes": gen.n_axes},
        )
    dx, *_ = np.linalg.lstsq(lam, angles, rcond=None)

    fit_residual = float(np.linalg.norm(lam @ dx - angles))
    block_residual = float(
        np.linalg.norm(frame - block_diag([rot2_block(a) for a in angles]), "fro")
    )
    residual = max(fit_residual, block_residual)
    if not math.isfinite(residual) or residual > tol:
        raise InconsistencyError(
            "rotation was not generated by this set inside one period",
            detail={"fit_residual": fit_residual, "block_residual": block_residual, "tol": tol},
        )
    return dx


def random_batch(
    gen: GeneratorSet,
    count: int,
    rng: np.random.Generator,
    position_range: Optional[float] = None,
) -> TokenBatch:
    """Standard-normal vectors at positions uniform in [-range, range]^N."""
    position_range = settings.RELATIVITY_RANGE if position_range is None else position_range
    positions = rng.uniform(-position_range, position_range, size=(count, gen.n_axes))
    vectors = rng.standard_normal(size=(count, gen.d))
    return TokenBatch(positions=positions, vectors=vectors)
