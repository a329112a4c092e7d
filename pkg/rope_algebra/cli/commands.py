# =============================================================================
# rope_algebra/cli/commands.py - gen / verify / bench / demo
# =============================================================================
"""Command handlers. Each takes a ``CliConfig``, writes one JSON document
(to ``--output`` or stdout) and returns the process exit code: 0 when every
check passed, 1 when one failed. Usage and parse errors are raised and
mapped to exit code 2 by ``rope_algebra.main``.
"""
import math
import time
from typing import Callable, Dict, List, Optional

import numpy as np

from rope_algebra.attention.models import TokenBatch
from rope_algebra.attention.services import (
    attention_scores,
    random_batch,
    recover_displacement,
    relative_scores_oracle,
    rotate_batch,
)
from rope_algebra.cli.models import BenchReport, CliConfig, DemoReport, Latency
from rope_algebra.config import settings
from rope_algebra.exceptions import (
    DimensionError,
    DomainError,
    InconsistencyError,
    StateError,
    UsageError,
)
from rope_algebra.generators.builders import conjugate, embed_in_larger, mixed_2d, toral_basis
from rope_algebra.generators.models import FrequencySchedule, GeneratorSet
from rope_algebra.generators.rotation import rope_matrix_dense, rope_matrix_fast
from rope_algebra.generators.schemas import load_generator_set, save_generator_set
from rope_algebra.linalg.core import RotationMatrix
from rope_algebra.ortho.param import build_orthogonal_with_info, random_ortho_param
from rope_algebra.ortho.schemas import load_ortho_param
from rope_algebra.utils.logging import cli_logger as logger
from rope_algebra.utils.serialization import write_model
from rope_algebra.validation.checks import validate_all
from rope_algebra.validation.models import CheckResult

DEFAULT_AXES = 2
DEFAULT_BLOCKS = 1


# -----------------------------------------------------------------------------
# gen
# -----------------------------------------------------------------------------


def _check_gen_flags(config: CliConfig) -> None:
    if config.conjugate is not None and config.ortho_param is not None:
        raise UsageError("--conjugate and --ortho-param are mutually exclusive")
    if config.construction == "mixed":
        if config.n_axes not in (None, 2):
            raise UsageError("the mixed construction has exactly 2 axes", detail={"axes": config.n_axes})
        if config.blocks_per_axis is not None:
            raise UsageError("--blocks does not apply to the mixed construction")
    elif config.theta2 is not None:
        raise UsageError("--theta2 only applies to the mixed construction")


def _base_set(config: CliConfig) -> GeneratorSet:
    if config.construction == "mixed":
        theta2 = 0.5 * config.theta if config.theta2 is None else config.theta2
        return mixed_2d(config.theta, theta2, base=config.base)
    blocks = DEFAULT_BLOCKS if config.blocks_per_axis is None else config.blocks_per_axis
    n_axes = DEFAULT_AXES if config.n_axes is None else config.n_axes
    schedule = FrequencySchedule.geometric(blocks, base=config.base, theta=config.theta)
    return toral_basis(n_axes, blocks, schedule)


def _target_dim(config: CliConfig, n_axes: int, minimal: int) -> int:
    d = config.d
    if d is None:
        return minimal
    if d // 2 < n_axes:
        raise DomainError(
            f"so({d}) has rank floor(d/2) = {d // 2}; {n_axes} commuting independent "
            f"generators need floor(d/2) >= N = {n_axes}",
            detail={"d": d, "n_axes": n_axes},
        )
    if d % 2:
        raise DomainError("target dimension must be even", detail={"d": d})
    if d < minimal:
        raise DomainError(
            f"construction needs d >= {minimal}", detail={"d": d, "minimal": minimal}
        )
    return d


def _basis_change(config: CliConfig, d: int, seed: int) -> Optional[RotationMatrix]:
    if config.ortho_param is not None:
        p = load_ortho_param(config.ortho_param)
        if p.dim != d:
            raise DimensionError(
                "orthogonal parameter dimension does not match the generator set",
                detail={"d": d, "dim": p.dim},
            )
    elif config.conjugate is not None:
        p = random_ortho_param(config.conjugate, d, np.random.default_rng(seed))
    else:
        return None
    build = build_orthogonal_with_info(p)
    for warning in build.warnings:
        logger.warning("basis change", kind=p.kind.value, warning=warning)
    return build.matrix


def cmd_gen(config: CliConfig) -> int:
    _check_gen_flags(config)
    seed = config.resolved_seed
    # Dimension flags are checked before anything is built.
    n_axes = 2 if config.construction == "mixed" else (config.n_axes or DEFAULT_AXES)
    if config.d is not None:
        _target_dim(config, n_axes, minimal=2)

    gen = _base_set(config)
    d = _target_dim(config, gen.n_axes, minimal=gen.d)
    if d > gen.d:
        gen = embed_in_larger(gen, d)

    q = _basis_change(config, d, seed)
    if q is not None:
        gen = conjugate(gen, q)

    save_generator_set(gen, config.output, seed=seed)
    logger.info(
        "generated set", construction=config.construction, d=gen.d, n_axes=gen.n_axes,
        conjugated=q is not None, seed=seed,
    )
    return 0


# -----------------------------------------------------------------------------
# verify
# -----------------------------------------------------------------------------


def cmd_verify(config: CliConfig) -> int:
    if config.grid is not None and config.grid < 2:
        raise UsageError("--grid must be at least 2", detail={"grid": config.grid})
    seed = config.resolved_seed
    gen = load_generator_set(config.input)
    # An explicit grid is honoured exactly or refused; only the default is capped.
    if config.grid is not None and config.grid ** gen.n_axes > settings.MAX_GRID_POINTS:
        raise UsageError(
            f"--grid {config.grid} gives {config.grid}^{gen.n_axes} points, "
            f"above the limit of {settings.MAX_GRID_POINTS}",
            detail={"grid": config.grid, "n_axes": gen.n_axes, "limit": settings.MAX_GRID_POINTS},
        )
    report = validate_all(
        gen,
        seed=seed,
        n_samples=config.samples,
        tol_relativity=config.tol_relativity,
        grid_per_axis=config.grid,
    )
    write_model(report, config.output)
    if not report.verdict:
        logger.info("verification failed", failed=report.failed())
    return 0 if report.verdict else 1


# -----------------------------------------------------------------------------
# bench
# -----------------------------------------------------------------------------


def _latency(samples: np.ndarray) -> Latency:
    return Latency(median=float(np.median(samples)), p95=float(np.percentile(samples, 95)))


def cmd_bench(config: CliConfig) -> int:
    m = settings.BENCH_POSITIONS if config.positions is None else config.positions
    if m < 1:
        raise UsageError("--positions must be at least 1", detail={"positions": m})
    seed = config.resolved_seed
    gen = load_generator_set(config.input)
    if gen.block_plan is None:
        raise StateError("generator set has no block plan; nothing to compare the dense path with")

    rng = np.random.default_rng(seed)
    positions = rng.uniform(
        -settings.RELATIVITY_RANGE, settings.RELATIVITY_RANGE, size=(m, gen.n_axes)
    )
    fast_times, dense_times = np.empty(m), np.empty(m)
    disagreement = 0.0
    for k, x in enumerate(positions):
        t0 = time.perf_counter()
        fast = rope_matrix_fast(gen, x)
        t1 = time.perf_counter()
        dense = rope_matrix_dense(gen, x)
        t2 = time.perf_counter()
        fast_times[k], dense_times[k] = t1 - t0, t2 - t1
        disagreement = max(disagreement, float(np.linalg.norm(fast - dense, "fro")))

    fast_latency, dense_latency = _latency(fast_times), _latency(dense_times)
    speedup = dense_latency.median / fast_latency.median if fast_latency.median > 0 else 0.0
    checks = [
        CheckResult.measure(
            "fast_dense_agreement",
            disagreement,
            settings.FAST_DENSE_TOL,
            detail=f"max Frobenius disagreement over {m} positions",
        ),
    ]
    # Direction only, and only where the dense path is measurably slower.
    if gen.d >= settings.BENCH_SPEEDUP_MIN_D:
        checks.append(
            CheckResult.measure(
                "speedup",
                fast_latency.median / dense_latency.median if dense_latency.median > 0 else math.inf,
                1.0,
                detail=f"fast / dense median time; speedup {speedup:.3g}x",
            )
        )
    report = BenchReport(
        verdict=all(c.passed for c in checks),
        seed=seed,
        d=gen.d,
        n_axes=gen.n_axes,
        positions=m,
        fast=fast_latency,
        dense=dense_latency,
        speedup=speedup,
        checks=checks,
    )
    write_model(report, config.output)
    logger.info("benchmark done", d=gen.d, positions=m, speedup=speedup)
    return 0 if report.verdict else 1


# -----------------------------------------------------------------------------
# demo
# -----------------------------------------------------------------------------


def _score_relativity(gen: GeneratorSet, raw_q: TokenBatch, raw_k: TokenBatch, tol: float) -> CheckResult:
    rotated = attention_scores(rotate_batch(gen, raw_q), rotate_batch(gen, raw_k))
    oracle = relative_scores_oracle(gen, raw_q, raw_k)
    return CheckResult.measure(
        "score_relativity",
        float(np.max(np.abs(rotated - oracle))),
        tol,
        detail="rotated scores vs q_s^T R(x_t - x_s) k_t",
    )


def _shift_equivariance(
    gen: GeneratorSet, raw_q: TokenBatch, raw_k: TokenBatch, offset: np.ndarray, tol: float
) -> CheckResult:
    before = attention_scores(rotate_batch(gen, raw_q), rotate_batch(gen, raw_k))
    after = attention_scores(
        rotate_batch(gen, raw_q.shifted(offset)), rotate_batch(gen, raw_k.shifted(offset))
    )
    return CheckResult.measure(
        "shift_equivariance",
        float(np.max(np.abs(after - before))),
        tol,
        detail="scores before and after a common position shift",
    )


def _round_trip(gen: GeneratorSet, dx: np.ndarray, tol: float) -> CheckResult:
    try:
        recovered = recover_displacement(gen, rope_matrix_dense(gen, dx))
    except (InconsistencyError, StateError) as e:
        detail = e.detail if isinstance(e.detail, dict) else {}
        if "rank" in detail:
            residual = float(detail["n_axes"] - detail["rank"])
        else:
            residual = max(detail.get("fit_residual", 1.0), detail.get("block_residual", 1.0))
        return CheckResult.measure("displacement_round_trip", residual, tol, detail=str(e))
    return CheckResult.measure(
        "displacement_round_trip",
        float(np.max(np.abs(recovered - dx))),
        tol,
        detail="sup error of the recovered displacement",
    )


def cmd_demo(config: CliConfig) -> int:
    tokens = settings.DEMO_TOKENS if config.tokens is None else config.tokens
    if tokens < 1:
        raise UsageError("--tokens must be at least 1", detail={"tokens": tokens})
    seed = config.resolved_seed
    tol = settings.RELATIVITY_TOL if config.tol_relativity is None else config.tol_relativity
    gen = load_generator_set(config.input)

    rng = np.random.default_rng(seed)
    raw_q = random_batch(gen, tokens, rng)
    raw_k = random_batch(gen, tokens, rng)
    offset = rng.uniform(-settings.RELATIVITY_RANGE, settings.RELATIVITY_RANGE, size=gen.n_axes)
    # Keeps every block angle inside (-pi, pi) whatever the axis mixing.
    half = 0.45 * gen.schedule.period / gen.n_axes
    dx = rng.uniform(-half, half, size=gen.n_axes)

    checks: List[CheckResult] = sorted(
        [
            _score_relativity(gen, raw_q, raw_k, tol),
            _shift_equivariance(gen, raw_q, raw_k, offset, tol),
            _round_trip(gen, dx, tol),
        ],
        key=lambda c: c.name,
    )
    report = DemoReport(
        verdict=all(c.passed for c in checks),
        seed=seed,
        d=gen.d,
        n_axes=gen.n_axes,
        tokens=tokens,
        checks=checks,
    )
    write_model(report, config.output)
    return 0 if report.verdict else 1


COMMANDS: Dict[str, Callable[[CliConfig], int]] = {
    "gen": cmd_gen,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "demo": cmd_demo,
}


def run_command(config: CliConfig) -> int:
    try:
        handler = COMMANDS[config.command]
    except KeyError as e:
        raise UsageError(f"unknown command {config.command!r}") from e
    return handler(config)
