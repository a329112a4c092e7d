# =============================================================================
# rope_algebra/cli/models.py - Command Configuration and Report Schemas
# =============================================================================

import argparse
from dataclasses import dataclass, fields
from typing import List, Optional

from pydantic import BaseModel

from rope_algebra.config import settings
from rope_algebra.validation.models import CheckResult


@dataclass(frozen=True)
class CliConfig:
    """One parsed invocation. ``None`` means the flag was not given."""

    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    construction: str = "toral"
    n_axes: Optional[int] = None
    blocks_per_axis: Optional[int] = None
    base: Optional[float] = None
    theta: float = 1.0
    theta2: Optional[float] = None
    d: Optional[int] = None
    conjugate: Optional[str] = None
    ortho_param: Optional[str] = None
    seed: Optional[int] = None
    samples: Optional[int] = None
    tol_relativity: Optional[float] = None
    grid: Optional[int] = None
    positions: Optional[int] = None
    tokens: Optional[int] = None

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "CliConfig":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in vars(ns).items() if k in known})

    @property
    def resolved_seed(self) -> int:
        """--seed, else ROPE_ALGEBRA_SEED."""
        return settings.SEED if self.seed is None else self.seed


class Latency(BaseModel):
    median: float
    p95: float


class BenchReport(BaseModel):
    verdict: bool
    seed: int
    d: int
    n_axes: int
    positions: int
    fast: Latency
    dense: Latency
    speedup: float
    checks: List[CheckResult]


class DemoReport(BaseModel):
    verdict: bool
    seed: int
    d: int
    n_axes: int
    tokens: int
    checks: List[CheckResult]
