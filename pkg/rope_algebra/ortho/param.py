# =============================================================================
# rope_algebra/ortho/param.py - Cayley, Exponential and Givens Parameterizations
# =============================================================================

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from rope_algebra.config import settings
from rope_algebra.exceptions import DomainError
from rope_algebra.linalg.core import (
    Matrix,
    RotationMatrix,
    as_rotation,
    mat_exp_dense,
    scaling_exponent,
    skew_from_upper,
    skew_unit,
    upper_pairs,
)
from rope_algebra.ortho.models import OrthoKind, OrthoParam
from rope_algebra.utils.logging import ortho_logger as logger


@dataclass(frozen=True)
class OrthoBuild:
    """Result of building Q, with numerical metadata."""

    matrix: RotationMatrix
    condition: Optional[float] = None
    warnings: Tuple[str, ...] = ()


def default_givens_plan(d: int) -> List[Tuple[int, int]]:
    """All pairs (i, j), i < j, row-major: d(d-1)/2 factors."""
    if d < 2:
        raise DomainError("givens plan needs d >= 2", detail={"d": d})
    return upper_pairs(d)


def _rotate_rows(m: Matrix, i: int, j: int, angle: float) -> None:
    """m <- G(i, j, angle) @ m, in place."""
    c, s = np.cos(angle), np.sin(angle)
    row_i, row_j = m[i].copy(), m[j].copy()
    m[i] = c * row_i - s * row_j
    m[j] = s * row_i + c * row_j


def _givens_product(dim: int, plan: Sequence[Tuple[int, int]], angles: Sequence[float]) -> Matrix:
    """G_r ... G_2 G_1 for the given (sub)plan."""
    q = np.eye(dim)
    for (i, j), angle in zip(plan, angles):
        _rotate_rows(q, i, j, angle)
    return q


def _cayley(a: Matrix) -> OrthoBuild:
    identity = np.eye(a.shape[0])
    # (I - A) and (I + A)^-1 commute, so Q = (I + A)^-1 (I - A).
    q = np.linalg.solve(identity + a, identity - a)
    condition = float(np.linalg.cond(identity + a))
    warnings: Tuple[str, ...] = ()
    if condition > settings.CAYLEY_COND_LIMIT:
        warnings = (f"ill-conditioned I + A (condition {condition:.3e})",)
        logger.warning("ill-conditioned cayley solve", condition=condition)
    return OrthoBuild(matrix=q, condition=condition, warnings=warnings)


def build_orthogonal_with_info(p: OrthoParam) -> OrthoBuild:
    if p.kind is OrthoKind.GIVENS:
        return OrthoBuild(matrix=_givens_product(p.dim, p.plan, p.params))
    a = skew_from_upper(p.params, p.dim)
    if p.kind is OrthoKind.CAYLEY:
        return _cayley(a)
    return OrthoBuild(matrix=mat_exp_dense(a))


def build_orthogonal(p: OrthoParam) -> RotationMatrix:
    """
    Build the rotation Q described by an orthogonal parameter.

    Args:
        p: Validated parameter (cayley, exp or givens)

    Returns:
        Q in SO(d), checked against ORTH_TOL and DET_TOL

    Raises:
        OrthogonalityError: Q is not a rotation to tolerance, which only an
            ill-conditioned Cayley solve can produce; use
            ``build_orthogonal_with_info`` to inspect such a build
    """
    return as_rotation(build_orthogonal_with_info(p).matrix)


def dexp(a: Matrix, e: Matrix, order: Optional[int] = None) -> Matrix:
    """Frechet derivative of exp at A in direction E.

    Uses exp(A) * sum_k (-1)^k ad_A^k(E) / (k+1)! on A / 2^s, truncated at the
    Taylor order of ``mat_exp_dense``, then undoes the scaling with
    L <- e L + L e, e <- e e.
    """
    order = settings.EXP_TAYLOR_ORDER if order is None else order
    s = scaling_exponent(float(np.linalg.norm(a, 1)))
    x = a / (2.0 ** s)
    term = e / (2.0 ** s)

    acc = term.copy()
    for k in range(1, order + 1):
        term = -(x @ term - term @ x) / (k + 1)
        acc = acc + term
    ex = mat_exp_dense(x, order=order)
    frechet = ex @ acc
    for _ in range(s):
        frechet = ex @ frechet + frechet @ ex
        ex = ex @ ex
    return frechet


def _check_index(p: OrthoParam, index: int) -> None:
    if not 0 <= index < p.n_params:
        raise DomainError(
            "parameter index out of range", detail={"index": index, "n_params": p.n_params}
        )


def directional_derivative(p: OrthoParam, index: int) -> Matrix:
    """Analytic dQ / d params[index]."""
    _check_index(p, index)

    if p.kind is OrthoKind.GIVENS:
        i, j = p.plan[index]
        angle = p.params[index]
        c, s = np.cos(angle), np.sin(angle)
        right = _givens_product(p.dim, p.plan[:index], p.params[:index])
        left = _givens_product(p.dim, p.plan[index + 1 :], p.params[index + 1 :])
        dg = np.zeros((p.dim, p.dim))
        dg[i, i], dg[i, j] = -s, -c
        dg[j, i], dg[j, j] = c, -s
        return left @ dg @ right

    a = skew_from_upper(p.params, p.dim)
    pi, pj = upper_pairs(p.dim)[index]
    da = skew_unit(p.dim, pi, pj)
    if p.kind is OrthoKind.CAYLEY:
        identity = np.eye(p.dim)
        inv = np.linalg.solve(identity + a, identity)
        return -da @ inv - (identity - a) @ inv @ da @ inv
    return dexp(a, da)


def fd_directional_derivative(p: OrthoParam, index: int, eps: Optional[float] = None) -> Matrix:
    """Central finite difference (Q(p + eps e_i) - Q(p - eps e_i)) / (2 eps)."""
    eps = settings.FD_EPS if eps is None else eps
    if not eps > 0:
        raise DomainError("finite-difference step must be positive", detail={"eps": eps})
    _check_index(p, index)
    step = np.zeros(p.n_params)
    step[index] = eps
    plus = build_orthogonal(p.with_params(p.params + step))
    minus = build_orthogonal(p.with_params(p.params - step))
    return (plus - minus) / (2.0 * eps)


def random_ortho_param(
    kind: str,
    dim: int,
    rng: np.random.Generator,
    scale: Optional[float] = None,
    plan: Optional[Sequence[Tuple[int, int]]] = None,
) -> OrthoParam:
    """Parameters drawn uniformly from [-scale, scale]."""
    scale = settings.PARAM_SCALE if scale is None else scale
    kind = OrthoKind(kind)
    if kind is OrthoKind.GIVENS:
        plan = tuple(default_givens_plan(dim) if plan is None else plan)
        n = len(plan)
    else:
        plan = None
        n = dim * (dim - 1) // 2
    return OrthoParam(kind=kind, dim=dim, params=rng.uniform(-scale, scale, size=n), plan=plan)
