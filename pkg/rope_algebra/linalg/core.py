# =============================================================================
# rope_algebra/linalg/core.py - Dense Small-Matrix Primitives
# =============================================================================
"""Matrix exponential, brackets, structural residuals and 2x2 rotation blocks.

Everything here is a pure function of its inputs. Matrices are dense
``float64`` arrays; ``SkewMatrix`` and ``RotationMatrix`` are aliases that
document which invariant a value is expected to satisfy, and ``as_skew`` /
``as_rotation`` are the checked constructors.
"""
import math
import warnings
from dataclasses import asdict, dataclass
from typing import Dict, Optional, Sequence

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from rope_algebra.config import settings
from rope_algebra.exceptions import DimensionError, DomainError, OrthogonalityError

Matrix = NDArray[np.float64]
SkewMatrix = Matrix
RotationMatrix = Matrix

# Canonical so(2) generator: exp(a * J) is the rotation by a.
J = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class StructureResiduals:
    skew_residual: float
    orth_residual: float
    det_residual: float

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)


def as_matrix(a: ArrayLike, name: str = "matrix") -> Matrix:
    m = np.array(a, dtype=float)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise DimensionError(f"{name} must be a non-empty 2-D array", detail={"shape": m.shape})
    if not np.all(np.isfinite(m)):
        raise DomainError(f"{name} has non-finite entries")
    return m


def as_square(a: ArrayLike, name: str = "matrix") -> Matrix:
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square", detail={"shape": m.shape})
    return m


def as_skew(a: ArrayLike, tol: Optional[float] = None, even: bool = True) -> SkewMatrix:
    """Checked SkewMatrix: returns the exact skew part with a zero diagonal."""
    tol = settings.SKEW_TOL if tol is None else tol
    m = as_square(a, "skew matrix")
    if even and m.shape[0] % 2:
        raise DomainError("skew generators must have even dimension", detail={"dim": m.shape[0]})
    residual = float(np.max(np.abs(m + m.T)))
    if residual > tol:
        raise DomainError("matrix is not skew-symmetric", detail={"residual": residual, "tol": tol})
    skew = 0.5 * (m - m.T)
    np.fill_diagonal(skew, 0.0)
    return skew


def as_rotation(
    a: ArrayLike, orth_tol: Optional[float] = None, det_tol: Optional[float] = None
) -> RotationMatrix:
    """Checked RotationMatrix (element of SO(d))."""
    orth_tol = settings.ORTH_TOL if orth_tol is None else orth_tol
    det_tol = settings.DET_TOL if det_tol is None else det_tol
    m = as_square(a, "rotation matrix")
    res = structure_residuals(m)
    if res.orth_residual > orth_tol or res.det_residual > det_tol:
        raise OrthogonalityError(
            "matrix is not a rotation", detail={**res.as_dict(), "orth_tol": orth_tol, "det_tol": det_tol}
        )
    return m


def determinant(a: ArrayLike) -> float:
    """Determinant via LU with partial pivoting."""
    m = as_square(a)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(m, check_finite=False)
    swaps = int(np.count_nonzero(piv != np.arange(piv.size)))
    sign = -1.0 if swaps % 2 else 1.0
    return sign * float(np.prod(np.diag(lu)))


def scaling_exponent(norm: float, target: Optional[float] = None) -> int:
    """Smallest s >= 0 with norm / 2**s <= target."""
    target = settings.EXP_SCALE_TARGET if target is None else target
    if norm <= target:
        return 0
    return max(0, int(math.ceil(math.log2(norm / target))))


def mat_exp_dense(a: ArrayLike, order: Optional[int] = None) -> Matrix:
    """exp(A) by scaling and squaring with a truncated Taylor series.

    A is scaled by 2**-s so that ||A||_1 / 2**s <= EXP_SCALE_TARGET, the
    Taylor polynomial of degree ``order`` (default 13) is evaluated by
    Horner's rule, and the result is squared s times.
    """
    order = settings.EXP_TAYLOR_ORDER if order is None else order
    m = as_square(a)
    n = m.shape[0]
    s = scaling_exponent(float(np.linalg.norm(m, 1)))
    x = m / (2.0 ** s)

    identity = np.eye(n)
    result = identity.copy()
    for k in range(order, 0, -1):
        result = identity + (x @ result) / k
    for _ in range(s):
        result = result @ result
    return result


def rot2_block(angle: float) -> Matrix:
    if not math.isfinite(angle):
        raise DomainError("rotation angle must be finite", detail={"angle": angle})
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def commutator(a: ArrayLike, b: ArrayLike) -> Matrix:
    """Lie bracket [A, B] = AB - BA."""
    ma, mb = as_square(a), as_square(b)
    if ma.shape != mb.shape:
        raise DimensionError(
            "commutator operands differ in dimension", detail={"a": ma.shape, "b": mb.shape}
        )
    return ma @ mb - mb @ ma


def structure_residuals(a: ArrayLike) -> StructureResiduals:
    m = as_square(a)
    n = m.shape[0]
    return StructureResiduals(
        skew_residual=float(np.max(np.abs(m + m.T))),
        orth_residual=float(np.linalg.norm(m.T @ m - np.eye(n), "fro")),
        det_residual=abs(determinant(m) - 1.0),
    )


def block_diag(blocks: Sequence[ArrayLike]) -> Matrix:
    if len(blocks) == 0:
        raise DomainError("block_diag needs at least one block")
    return scipy.linalg.block_diag(*[as_square(b, "block") for b in blocks])


def upper_pairs(dim: int):
    """Strict upper-triangle index pairs (i, j), i < j, in row-major order."""
    return [(i, j) for i in range(dim) for j in range(i + 1, dim)]


def skew_unit(dim: int, i: int, j: int) -> SkewMatrix:
    """E_ij - E_ji."""
    e = np.zeros((dim, dim))
    e[i, j] = 1.0
    e[j, i] = -1.0
    return e


def skew_from_upper(params: ArrayLike, dim: int) -> SkewMatrix:
    """Skew A with A[i, j] = params[k] for the k-th strict-upper pair."""
    p = np.asarray(params, dtype=float).ravel()
    expected = dim * (dim - 1) // 2
    if p.size != expected:
        raise DimensionError(
            "parameter count does not match dimension", detail={"expected": expected, "got": p.size}
        )
    a = np.zeros((dim, dim))
    rows, cols = np.triu_indices(dim, k=1)
    a[rows, cols] = p
    a[cols, rows] = -p
    return a


def numerical_rank(m: ArrayLike, rtol: Optional[float] = None, dim: Optional[int] = None) -> int:
    """Rank with cutoff sigma_max * dim * rtol; ``dim`` defaults to max(shape).

    Pass ``dim`` when ``m`` is a triangular factor of a taller operator, so
    the cutoff matches the operator's shape.
    """
    rtol = settings.RANK_RTOL if rtol is None else rtol
    arr = np.asarray(m, dtype=float)
    if arr.size == 0:
        return 0
    sv = np.linalg.svd(arr, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    cutoff = sv[0] * (max(arr.shape) if dim is None else dim) * rtol
    return int(np.count_nonzero(sv > cutoff))
