# =============================================================================
# rope_algebra/validation/checks.py - Constraint-System and MASA Checks
# =============================================================================
"""Quantitative checks of a generator set against the RoPE constraints.

Relativity and reversibility are consequences of three algebraic
constraints: every B_i is skew, the B_i commute pairwise, and they are
linearly independent. Each check here measures one of these (or one of
their consequences) and returns a ``CheckResult`` whose ``passed`` flag is
``residual <= threshold``.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg
from scipy.spatial.distance import pdist

from rope_algebra.config import settings
from rope_algebra.exceptions import DomainError, ResourceError
from rope_algebra.generators.models import GeneratorSet
from rope_algebra.generators.rotation import rope_matrix_dense
from rope_algebra.linalg.core import commutator, numerical_rank, structure_residuals, upper_pairs
from rope_algebra.utils.logging import validation_logger as logger
from rope_algebra.validation.models import CheckResult, ValidationReport


@dataclass(frozen=True)
class MasaProbe:
    n_axes: int
    rank_bound: int  # floor(d / 2), the rank of so(d)
    nullity: int  # dimension of the centralizer of the set inside so(d)

    @property
    def rank_ok(self) -> bool:
        return self.n_axes <= self.rank_bound

    @property
    def centralizer_is_toral(self) -> bool:
        return self.nullity == self.rank_bound

    @property
    def full_masa_basis(self) -> bool:
        return self.n_axes == self.nullity


def check_skewness(gen: GeneratorSet, tol: Optional[float] = None) -> CheckResult:
    tol = settings.SKEW_TOL if tol is None else tol
    residuals = [structure_residuals(b).skew_residual for b in gen.basis]
    worst = int(np.argmax(residuals))
    return CheckResult.measure(
        "skewness", residuals[worst], tol, detail=f"worst generator B_{worst + 1}"
    )


def check_commutativity(gen: GeneratorSet, tol: Optional[float] = None) -> CheckResult:
    tol = settings.COMMUTATOR_TOL if tol is None else tol
    residual, worst = 0.0, None
    for i, k in upper_pairs(gen.n_axes):
        r = float(np.max(np.abs(commutator(gen.basis[i], gen.basis[k]))))
        if r > residual:
            residual, worst = r, (i + 1, k + 1)
    if gen.n_axes == 1:
        detail = "single generator"
    elif worst is None:
        detail = "all brackets vanish"
    else:
        detail = f"worst pair B_{worst[0]}, B_{worst[1]}"
    return CheckResult.measure("commutativity", residual, tol, detail=detail)


def generator_rank(gen: GeneratorSet) -> int:
    """Numerical rank of the vectorized stack (cutoff sigma_max * d^2 * RANK_RTOL)."""
    return numerical_rank(gen.basis.reshape(gen.n_axes, gen.d * gen.d))


def check_independence(gen: GeneratorSet) -> CheckResult:
    rank = generator_rank(gen)
    return CheckResult.measure(
        "independence", gen.n_axes - rank, 0, detail=f"rank {rank} of {gen.n_axes}"
    )


def check_relativity(
    gen: GeneratorSet,
    n_samples: Optional[int] = None,
    position_range: Optional[float] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> CheckResult:
    """max ||R(x1)^T R(x2) - R(x2 - x1)||_F over sampled pairs, dense path."""
    n_samples = settings.RELATIVITY_SAMPLES if n_samples is None else n_samples
    position_range = settings.RELATIVITY_RANGE if position_range is None else position_range
    tol = settings.RELATIVITY_TOL if tol is None else tol
    seed = settings.SEED if seed is None else seed
    if n_samples < 1:
        raise DomainError("relativity check needs at least one sample", detail={"n_samples": n_samples})

    rng = np.random.default_rng(seed)
    pairs = rng.uniform(-position_range, position_range, size=(n_samples, 2, gen.n_axes))
    residual = 0.0
    for x1, x2 in pairs:
        lhs = rope_matrix_dense(gen, x1).T @ rope_matrix_dense(gen, x2)
        rhs = rope_matrix_dense(gen, x2 - x1)
        residual = max(residual, float(np.linalg.norm(lhs - rhs, "fro")))
    return CheckResult.measure(
        "relativity",
        residual,
        tol,
        detail=f"{n_samples} pairs in [-{position_range:g}, {position_range:g}]^{gen.n_axes}",
    )


def period_grid(
    gen: GeneratorSet, grid_per_axis: int, endpoint: bool = False
) -> np.ndarray:
    """Regular grid over one fundamental period [-P/2, P/2) per axis, shape (g^N, N)."""
    half = gen.schedule.period / 2.0
    axis = np.linspace(-half, half, grid_per_axis, endpoint=endpoint)
    mesh = np.meshgrid(*([axis] * gen.n_axes), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def sampled_period_grid(
    gen: GeneratorSet, grid_per_axis: int, count: int, seed: int, endpoint: bool = False
) -> np.ndarray:
    """Up to ``count`` distinct points of ``period_grid`` drawn without building it."""
    half = gen.schedule.period / 2.0
    axis = np.linspace(-half, half, grid_per_axis, endpoint=endpoint)
    rng = np.random.default_rng(seed)
    index = np.unique(rng.integers(0, grid_per_axis, size=(count, gen.n_axes)), axis=0)
    return axis[index]


def check_reversibility(
    gen: GeneratorSet,
    grid_per_axis: Optional[int] = None,
    tol: Optional[float] = None,
    endpoint: bool = False,
    sample_points: Optional[int] = None,
    seed: Optional[int] = None,
) -> CheckResult:
    """Grid falsification of injectivity plus the independence certificate.

    The residual counts colliding grid pairs (distance <= tol) plus the rank
    deficiency of the generators. ``endpoint=True`` closes the grid so both
    ends of the period are sampled; they collide by periodicity.

    A grid above MAX_GRID_POINTS raises ``ResourceError`` unless
    ``sample_points`` is given, in which case that many grid points (at most
    MAX_GRID_POINTS) are drawn with ``seed`` and compared instead.
    """
    grid_per_axis = settings.REVERSIBILITY_GRID if grid_per_axis is None else grid_per_axis
    tol = settings.REVERSIBILITY_TOL if tol is None else tol
    if grid_per_axis < 2:
        raise DomainError("grid needs at least 2 points per axis", detail={"grid": grid_per_axis})
    n_points = grid_per_axis ** gen.n_axes
    if n_points <= settings.MAX_GRID_POINTS:
        points = period_grid(gen, grid_per_axis, endpoint=endpoint)
        scope = f"grid {grid_per_axis}^{gen.n_axes}"
    elif sample_points is not None:
        seed = settings.SEED if seed is None else seed
        count = min(sample_points, settings.MAX_GRID_POINTS)
        points = sampled_period_grid(gen, grid_per_axis, count, seed, endpoint=endpoint)
        scope = f"{len(points)} sampled points of grid {grid_per_axis}^{gen.n_axes}"
    else:
        raise ResourceError(
            "reversibility grid too large",
            detail={"points": n_points, "limit": settings.MAX_GRID_POINTS},
        )

    flat = np.stack([rope_matrix_dense(gen, x).ravel() for x in points])
    distances = pdist(flat)
    min_distance = float(distances.min())
    collisions = int(np.count_nonzero(distances <= tol))
    rank = generator_rank(gen)

    residual = collisions + (gen.n_axes - rank)
    return CheckResult.measure(
        "reversibility",
        residual,
        0,
        detail=(
            f"{scope} over period {gen.schedule.period:.6g}; "
            f"min distance {min_distance:.3e}; collisions {collisions}; "
            f"rank {rank} of {gen.n_axes}"
        ),
    )


def _bracket_rows(
    b: np.ndarray, rows: np.ndarray, cols: np.ndarray, start: int, stop: int
) -> np.ndarray:
    """Rows start..stop-1 of [E_k, b] for every skew unit E_k, as (c*d, m) operator rows.

    E_k = e_r e_c^T - e_c e_r^T with (r, c) = (rows[k], cols[k]).
    """
    m, d = rows.size, b.shape[0]
    out = np.zeros((m, stop - start, d))
    k = np.arange(m)
    # E_k b: row r is b[c, :], row c is -b[r, :]
    hit = (rows >= start) & (rows < stop)
    out[k[hit], rows[hit] - start, :] += b[cols[hit], :]
    hit = (cols >= start) & (cols < stop)
    out[k[hit], cols[hit] - start, :] -= b[rows[hit], :]
    # -b E_k: column c gets -b[:, r], column r gets b[:, c]
    out[k, :, cols] -= b[start:stop, rows].T
    out[k, :, rows] += b[start:stop, cols].T
    return out.reshape(m, -1).T


def masa_probe(gen: GeneratorSet) -> MasaProbe:
    """Centralizer dimension of the set in so(d).

    The operator X -> ([X, B_1], ..., [X, B_N]) on the d(d-1)/2 skew basis
    elements is never formed whole: its rows are streamed in chunks into a
    running triangular QR factor, which has the same singular values.
    """
    d = gen.d
    rows, cols = np.triu_indices(d, k=1)
    m = rows.size
    step = max(1, m // d)
    factor = np.zeros((0, m))
    for b in gen.basis:
        for start in range(0, d, step):
            chunk = _bracket_rows(b, rows, cols, start, min(start + step, d))
            stacked = np.vstack([factor, chunk])
            factor = scipy.linalg.qr(stacked, mode="r", check_finite=False)[0][:m]
    nullity = m - numerical_rank(factor, dim=gen.n_axes * d * d)
    return MasaProbe(n_axes=gen.n_axes, rank_bound=d // 2, nullity=nullity)


def check_masa(gen: GeneratorSet) -> CheckResult:
    """Rank bound N <= floor(d/2) and a centralizer of at least toral size."""
    probe = masa_probe(gen)
    residual = max(0, probe.n_axes - probe.rank_bound) + max(0, probe.rank_bound - probe.nullity)
    return CheckResult.measure(
        "masa",
        residual,
        0,
        detail=(
            f"N {probe.n_axes}; floor(d/2) {probe.rank_bound}; centralizer dim {probe.nullity}; "
            f"rank_ok {probe.rank_ok}; centralizer_is_toral {probe.centralizer_is_toral}; "
            f"full_masa_basis {probe.full_masa_basis}"
        ),
    )


def capped_grid(n_axes: int, grid_per_axis: int) -> int:
    """Largest per-axis grid <= grid_per_axis keeping g^N within MAX_GRID_POINTS.

    Never below 2; with many axes 2^N can still exceed the limit, and the
    reversibility check then samples the grid.
    """
    cap = int(math.floor(settings.MAX_GRID_POINTS ** (1.0 / n_axes) + 1e-9))
    return max(2, min(grid_per_axis, cap))


def validate_all(
    gen: GeneratorSet,
    seed: Optional[int] = None,
    n_samples: Optional[int] = None,
    tol_relativity: Optional[float] = None,
    grid_per_axis: Optional[int] = None,
) -> ValidationReport:
    """
    Run every constraint check on a generator set.

    Args:
        gen: Generator set to check
        seed: Seed for relativity pairs and grid sampling (default: SEED)
        n_samples: Relativity sample pairs (default: RELATIVITY_SAMPLES)
        tol_relativity: Relativity threshold (default: RELATIVITY_TOL)
        grid_per_axis: Reversibility grid, capped to MAX_GRID_POINTS (default: REVERSIBILITY_GRID)

    Returns:
        Report with checks sorted by name; verdict is the AND of all checks
    """
    seed = settings.SEED if seed is None else seed
    grid_per_axis = settings.REVERSIBILITY_GRID if grid_per_axis is None else grid_per_axis

    checks = [
        check_skewness(gen),
        check_commutativity(gen),
        check_independence(gen),
        check_relativity(gen, n_samples=n_samples, tol=tol_relativity, seed=seed),
        check_reversibility(
            gen,
            grid_per_axis=capped_grid(gen.n_axes, grid_per_axis),
            sample_points=settings.REVERSIBILITY_SAMPLE_POINTS,
            seed=seed,
        ),
        check_masa(gen),
    ]
    report = ValidationReport.from_checks(checks, seed=seed)
    logger.debug(
        "validated generator set", d=gen.d, n_axes=gen.n_axes, verdict=report.verdict,
        failed=report.failed(),
    )
    return report
