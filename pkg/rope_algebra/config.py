# =============================================================================
# rope_algebra/config.py - Tolerances, Defaults and Environment Variables
# =============================================================================

from functools import lru_cache
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="ROPE_ALGEBRA_",
        case_sensitive=True,
        extra="ignore",
    )

    # Structural residuals
    SKEW_TOL: float = 1e-12
    ORTH_TOL: float = 1e-10
    DET_TOL: float = 1e-8
    COMMUTATOR_TOL: float = 1e-12
    BLOCK_TOL: float = 1e-9

    # Numerical rank: cutoff = sigma_max * matrix_dim * RANK_RTOL
    RANK_RTOL: float = 1e-12

    # Matrix exponential
    EXP_TAYLOR_ORDER: int = 13
    EXP_SCALE_TARGET: float = 0.5

    # Relativity / reversibility checks
    RELATIVITY_TOL: float = 1e-9
    RELATIVITY_SAMPLES: int = 200
    RELATIVITY_RANGE: float = 50.0
    REVERSIBILITY_TOL: float = 1e-6
    REVERSIBILITY_GRID: int = 8
    MAX_GRID_POINTS: int = 10_000
    REVERSIBILITY_SAMPLE_POINTS: int = 2_000

    # Rotation paths
    FAST_DENSE_TOL: float = 1e-10
    RECOVERY_RESIDUAL_TOL: float = 1e-6

    # Orthogonal parameterizations
    CAYLEY_COND_LIMIT: float = 1e12
    FD_EPS: float = 1e-6
    PARAM_SCALE: float = 0.5

    # Frequency schedule
    DEFAULT_BASE: float = 10000.0

    # CLI
    SEED: int = 0
    BENCH_POSITIONS: int = 10_000
    BENCH_SPEEDUP_MIN_D: int = 32
    DEMO_TOKENS: int = 8

    # Logging
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"
    LOG_FILE: Optional[str] = None


@lru_cache()
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
