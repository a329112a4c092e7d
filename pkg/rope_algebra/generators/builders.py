# =============================================================================
# rope_algebra/generators/builders.py - Generator Set Constructions
# =============================================================================
"""Toral bases, the canonical and mixed 2D sets, embeddings and basis changes.

A generator set built here always carries a block plan: for every axis the
(block index, frequency) pairs of its 2x2 rotation blocks in the frame
``q``, i.e. ``q^T B_i q = diag(lambda_{i,0} J, ..., lambda_{i,d/2-1} J)``.
"""
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from rope_algebra.config import settings
from rope_algebra.exceptions import DimensionError, DomainError
from rope_algebra.generators.models import (
    DEGENERATE,
    BlockPlan,
    FrequencySchedule,
    GeneratorSet,
    frequencies_of,
)
from rope_algebra.linalg.core import J, as_rotation, as_square, block_diag
from rope_algebra.utils.logging import generators_logger as logger


def _require_positive_int(value: int, name: str) -> int:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise DomainError(f"{name} must be a positive integer", detail={name: value})
    return int(value)


def toral_basis(n_axes: int, blocks_per_axis: int, schedule: FrequencySchedule) -> GeneratorSet:
    """Basis of the maximal toral subalgebra of so(2NK).

    Axis i owns the contiguous blocks i*K .. (i+1)*K - 1 and carries
    theta_k * J on its k-th block.
    """
    n_axes = _require_positive_int(n_axes, "n_axes")
    blocks_per_axis = _require_positive_int(blocks_per_axis, "blocks_per_axis")
    if len(schedule.values) != blocks_per_axis:
        raise DomainError(
            "schedule length must equal blocks_per_axis",
            detail={"schedule": len(schedule.values), "blocks_per_axis": blocks_per_axis},
        )

    n_blocks = n_axes * blocks_per_axis
    d = 2 * n_blocks
    basis = np.zeros((n_axes, d, d))
    plan: Dict[int, Tuple[Tuple[int, float], ...]] = {}
    for axis in range(n_axes):
        entries = []
        for k, theta in enumerate(schedule.values):
            j = axis * blocks_per_axis + k
            basis[axis, 2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = theta * J
            entries.append((j, theta))
        plan[axis] = tuple(entries)

    logger.debug("built toral basis", n_axes=n_axes, blocks_per_axis=blocks_per_axis, d=d)
    return GeneratorSet(
        d=d,
        n_axes=n_axes,
        blocks_per_axis=blocks_per_axis,
        basis=basis,
        schedule=schedule,
        block_plan=plan,
    )


def standard_2d(schedule: FrequencySchedule) -> GeneratorSet:
    """The standard 2D RoPE set: toral_basis(2, K, schedule)."""
    return toral_basis(2, len(schedule.values), schedule)


def mixed_2d(theta1: float, theta2: float, base: Optional[float] = None) -> GeneratorSet:
    """Mixed-frequency 2D set: both axes share theta1 J (+) theta2 J.

    The rotation depends on x1 + x2 only, so the two generators are linearly
    dependent. The set is flagged ``degenerate`` instead of rejected.
    """
    for name, theta in (("theta1", theta1), ("theta2", theta2)):
        if not np.isfinite(theta) or theta <= 0:
            raise DomainError(f"{name} must be positive", detail={name: theta})
    shared = block_diag([theta1 * J, theta2 * J])
    entries = ((0, float(theta1)), (1, float(theta2)))
    base = settings.DEFAULT_BASE if base is None else base
    logger.debug("built mixed 2d set", theta1=theta1, theta2=theta2)
    return GeneratorSet(
        d=4,
        n_axes=2,
        blocks_per_axis=2,
        basis=np.stack([shared, shared]),
        schedule=FrequencySchedule(base=base, values=(theta1, theta2)),
        block_plan={0: entries, 1: entries},
        flags=(DEGENERATE,),
    )


def embed_in_larger(gen: GeneratorSet, d_target: int) -> GeneratorSet:
    """Zero-pad every generator into the top-left corner of so(d_target)."""
    if int(d_target) != d_target or d_target % 2 or d_target <= gen.d:
        raise DomainError(
            "target dimension must be even and larger than the current one",
            detail={"d": gen.d, "d_target": d_target},
        )
    d_target = int(d_target)
    basis = np.zeros((gen.n_axes, d_target, d_target))
    basis[:, : gen.d, : gen.d] = gen.basis
    q = None
    if gen.q is not None:
        q = np.eye(d_target)
        q[: gen.d, : gen.d] = gen.q

    logger.debug("embedded generator set", d=gen.d, d_target=d_target)
    return GeneratorSet(
        d=d_target,
        n_axes=gen.n_axes,
        blocks_per_axis=gen.blocks_per_axis,
        basis=basis,
        schedule=gen.schedule,
        q=q,
        block_plan=gen.block_plan,
        flags=gen.flags,
    )


def conjugate(gen: GeneratorSet, q: ArrayLike, orth_tol: Optional[float] = None) -> GeneratorSet:
    """B_i' = q B_i q^T; the stored basis change becomes q @ gen.q."""
    orth_tol = settings.ORTH_TOL if orth_tol is None else orth_tol
    q = as_square(q, "basis change")
    if q.shape[0] != gen.d:
        raise DimensionError(
            "basis change dimension does not match generator set",
            detail={"d": gen.d, "q": q.shape[0]},
        )
    # Reflections (det -1) are rejected along with non-orthogonal matrices.
    q = as_rotation(q, orth_tol=orth_tol)

    rotated = np.einsum("ab,nbc,dc->nad", q, gen.basis, q)
    # Restore exact skew symmetry lost to rounding.
    rotated = 0.5 * (rotated - np.transpose(rotated, (0, 2, 1)))
    new_q = q if gen.q is None else q @ gen.q

    logger.debug("conjugated generator set", d=gen.d)
    return GeneratorSet(
        d=gen.d,
        n_axes=gen.n_axes,
        blocks_per_axis=gen.blocks_per_axis,
        basis=rotated,
        schedule=gen.schedule,
        q=new_q,
        block_plan=gen.block_plan,
        flags=gen.flags,
    )


def infer_block_plan(
    basis: np.ndarray, q: Optional[np.ndarray] = None, tol: Optional[float] = None
) -> Optional[BlockPlan]:
    """Read the block plan off q^T B_i q, or None if some generator is not
    block-diagonal with lambda*J blocks in that frame."""
    tol = settings.BLOCK_TOL if tol is None else tol
    n_axes, d, _ = basis.shape
    if d % 2:
        return None
    frame = basis if q is None else np.einsum("ba,nbc,cd->nad", q, basis, q)
    scale = max(1.0, float(np.max(np.abs(basis))))

    n_blocks = d // 2
    mask = np.kron(np.eye(n_blocks), np.ones((2, 2))).astype(bool)
    plan: Dict[int, Tuple[Tuple[int, float], ...]] = {}
    for axis in range(n_axes):
        m = frame[axis]
        if np.max(np.abs(np.where(mask, 0.0, m)), initial=0.0) > tol * scale:
            return None
        entries = []
        for j in range(n_blocks):
            blk = m[2 * j : 2 * j + 2, 2 * j : 2 * j + 2]
            lam = 0.5 * (blk[1, 0] - blk[0, 1])
            if np.max(np.abs(blk - lam * J)) > tol * scale:
                return None
            if abs(lam) > tol * scale:
                entries.append((j, float(lam)))
        plan[axis] = tuple(entries)
    return plan


def from_matrices(
    basis: Sequence[ArrayLike],
    schedule: Optional[FrequencySchedule] = None,
    q: Optional[ArrayLike] = None,
    blocks_per_axis: int = 1,
    flags: Sequence[str] = (),
) -> GeneratorSet:
    """Wrap an arbitrary generator stack; the block plan is inferred when the
    generators are simultaneously block-diagonal in the frame q."""
    stack = np.array([np.asarray(b, dtype=float) for b in basis])
    if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:
        raise DimensionError("generators must be square and share one dimension")
    q_arr = None if q is None else as_square(q, "basis change")
    plan = infer_block_plan(stack, q_arr)

    if schedule is None:
        if plan is not None:
            freqs = {f for entries in plan.values() for f in frequencies_of(entries)}
        else:
            freqs = {float(np.linalg.norm(b, 2)) for b in stack}
        freqs = {f for f in freqs if f > 0.0} or {1.0}
        schedule = FrequencySchedule(
            base=settings.DEFAULT_BASE, values=tuple(sorted(freqs, reverse=True))
        )
    if plan is None:
        logger.debug("generator set has no block plan", d=stack.shape[1])

    return GeneratorSet(
        d=stack.shape[1],
        n_axes=stack.shape[0],
        blocks_per_axis=blocks_per_axis,
        basis=stack,
        schedule=schedule,
        q=q_arr,
        block_plan=plan,
        flags=tuple(flags),
    )
