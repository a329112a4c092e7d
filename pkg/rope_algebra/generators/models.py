# =============================================================================
# rope_algebra/generators/models.py - Generator Set Domain Models
# =============================================================================

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from rope_algebra.config import settings
from rope_algebra.exceptions import DimensionError, DomainError
from rope_algebra.linalg.core import Matrix, RotationMatrix

DEGENERATE = "degenerate"

# axis -> ((block index, frequency coefficient), ...)
BlockPlan = Mapping[int, Tuple[Tuple[int, float], ...]]


@dataclass(frozen=True)
class FrequencySchedule:
    """Per-block rotation rates (radians per position unit)."""

    base: float
    values: Tuple[float, ...]

    def __post_init__(self):
        if not math.isfinite(self.base) or self.base <= 0:
            raise DomainError("frequency base must be positive", detail={"base": self.base})
        values = tuple(float(v) for v in self.values)
        if not values:
            raise DomainError("frequency schedule is empty")
        if any(not math.isfinite(v) or v <= 0 for v in values):
            raise DomainError("frequencies must be positive and finite", detail={"values": values})
        object.__setattr__(self, "values", values)

    @classmethod
    def geometric(
        cls, blocks: int, base: Optional[float] = None, theta: float = 1.0
    ) -> "FrequencySchedule":
        """theta_k = theta * base^(-2k / (2K)), k = 0..K-1.

        K = 1 gives the single frequency ``theta``.
        """
        base = settings.DEFAULT_BASE if base is None else float(base)
        if blocks < 1:
            raise DomainError("blocks per axis must be positive", detail={"blocks": blocks})
        if blocks > 1 and base <= 1.0:
            raise DomainError(
                "base must exceed 1 for a strictly decreasing schedule", detail={"base": base}
            )
        if not math.isfinite(theta) or theta <= 0:
            raise DomainError("theta must be positive", detail={"theta": theta})
        k = np.arange(blocks, dtype=float)
        values = theta * base ** (-2.0 * k / (2.0 * blocks))
        return cls(base=base, values=tuple(values.tolist()))

    @property
    def max_frequency(self) -> float:
        return max(self.values)

    @property
    def period(self) -> float:
        """Fundamental period 2*pi / max frequency."""
        return 2.0 * math.pi / self.max_frequency


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    """N skew generators B_1..B_N over so(d), stored as an (N, d, d) stack.

    Only structural facts are enforced here (shapes, finiteness, even d).
    Skewness, commutativity and independence are what ``validation``
    measures, so engineered negatives can still be represented.
    """

    d: int
    n_axes: int
    blocks_per_axis: int
    basis: np.ndarray
    schedule: FrequencySchedule
    q: Optional[RotationMatrix] = None
    block_plan: Optional[BlockPlan] = None
    flags: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.d < 2 or self.d % 2:
            raise DomainError("generator dimension must be even and positive", detail={"d": self.d})
        if self.n_axes < 1 or self.blocks_per_axis < 1:
            raise DomainError(
                "n_axes and blocks_per_axis must be positive",
                detail={"n_axes": self.n_axes, "blocks_per_axis": self.blocks_per_axis},
            )
        basis = np.array(self.basis, dtype=float)
        if basis.shape != (self.n_axes, self.d, self.d):
            raise DimensionError(
                "basis shape does not match (n_axes, d, d)",
                detail={"shape": basis.shape, "expected": (self.n_axes, self.d, self.d)},
            )
        if not np.all(np.isfinite(basis)):
            raise DomainError("basis has non-finite entries")
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

        if self.q is not None:
            q = np.array(self.q, dtype=float)
            if q.shape != (self.d, self.d):
                raise DimensionError("basis change has wrong shape", detail={"shape": q.shape})
            q.setflags(write=False)
            object.__setattr__(self, "q", q)

        if self.block_plan is not None:
            plan: Dict[int, Tuple[Tuple[int, float], ...]] = {}
            for axis, entries in self.block_plan.items():
                if not 0 <= axis < self.n_axes:
                    raise DomainError("block plan axis out of range", detail={"axis": axis})
                normalized = tuple((int(j), float(lam)) for j, lam in entries)
                if any(not 0 <= j < self.n_blocks for j, _ in normalized):
                    raise DomainError("block plan index out of range", detail={"axis": axis})
                plan[int(axis)] = normalized
            object.__setattr__(self, "block_plan", plan)
        object.__setattr__(self, "flags", tuple(self.flags))

    @property
    def n_blocks(self) -> int:
        return self.d // 2

    @property
    def is_degenerate(self) -> bool:
        return DEGENERATE in self.flags

    @property
    def basis_change(self) -> RotationMatrix:
        return np.eye(self.d) if self.q is None else self.q

    @cached_property
    def coefficients(self) -> Matrix:
        """Lambda with Lambda[i, j] = axis i's frequency on block j."""
        if self.block_plan is None:
            raise DomainError("generator set has no block plan")
        lam = np.zeros((self.n_axes, self.n_blocks))
        for axis, entries in self.block_plan.items():
            for j, freq in entries:
                lam[axis, j] += freq
        lam.setflags(write=False)
        return lam

    def generator_sum(self, x: np.ndarray) -> Matrix:
        """sum_i x^(i) B_i."""
        return np.tensordot(x, self.basis, axes=(0, 0))


def as_position(x: ArrayLike, n_axes: int) -> np.ndarray:
    """Checked PositionVector."""
    pos = np.atleast_1d(np.asarray(x, dtype=float))
    if pos.ndim != 1 or pos.shape[0] != n_axes:
        raise DimensionError(
            "position length does not match n_axes", detail={"n_axes": n_axes, "shape": pos.shape}
        )
    if not np.all(np.isfinite(pos)):
        raise DomainError("position has non-finite coordinates")
    return pos


def as_positions(xs: ArrayLike, n_axes: int) -> np.ndarray:
    """(count, n_axes) stack of checked positions."""
    arr = np.asarray(xs, dtype=float)
    if arr.ndim == 1 and n_axes == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[1] != n_axes:
        raise DimensionError(
            "positions must have shape (count, n_axes)",
            detail={"n_axes": n_axes, "shape": arr.shape},
        )
    if not np.all(np.isfinite(arr)):
        raise DomainError("positions have non-finite coordinates")
    return arr


def frequencies_of(entries: Sequence[Tuple[int, float]]) -> Tuple[float, ...]:
    return tuple(abs(lam) for _, lam in entries if lam != 0.0)
