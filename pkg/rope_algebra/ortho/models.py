# =============================================================================
# rope_algebra/ortho/models.py - Orthogonal Parameterization Models
# =============================================================================

import enum
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from rope_algebra.exceptions import DimensionError, DomainError


class OrthoKind(str, enum.Enum):
    CAYLEY = "cayley"
    EXP = "exp"
    GIVENS = "givens"


@dataclass(frozen=True, eq=False)
class OrthoParam:
    """Parameters that deterministically produce an orthogonal matrix.

    cayley / exp: ``params`` is the strict upper triangle of a skew A in
    row-major order. givens: one angle (radians) per ``plan`` pair, the
    factors applied in plan order.
    """

    kind: OrthoKind
    dim: int
    params: np.ndarray
    plan: Optional[Tuple[Tuple[int, int], ...]] = None

    def __post_init__(self):
        try:
            kind = OrthoKind(self.kind)
        except ValueError as e:
            raise DomainError("unknown parameterization kind", detail={"kind": self.kind}) from e
        object.__setattr__(self, "kind", kind)

        if self.dim < 2 or self.dim % 2:
            raise DomainError("dimension must be even and at least 2", detail={"dim": self.dim})

        params = np.array(self.params, dtype=float).ravel()
        if not np.all(np.isfinite(params)):
            raise DomainError("parameters must be finite")

        if kind is OrthoKind.GIVENS:
            if not self.plan:
                raise DomainError("givens parameterization needs a non-empty plan")
            plan = tuple((int(i), int(j)) for i, j in self.plan)
            for i, j in plan:
                if not 0 <= i < j < self.dim:
                    raise DomainError("invalid givens pair", detail={"pair": (i, j), "dim": self.dim})
            expected = len(plan)
        else:
            if self.plan is not None:
                raise DomainError(f"{kind.value} parameterization takes no plan")
            plan = None
            expected = self.dim * (self.dim - 1) // 2

        if params.size != expected:
            raise DimensionError(
                "parameter count does not match", detail={"expected": expected, "got": params.size}
            )
        params.setflags(write=False)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "plan", plan)

    @property
    def n_params(self) -> int:
        return int(self.params.size)

    def with_params(self, params: ArrayLike) -> "OrthoParam":
        return replace(self, params=np.asarray(params, dtype=float))


def ortho_param(
    kind: str, dim: int, params: ArrayLike, plan: Optional[Sequence[Sequence[int]]] = None
) -> OrthoParam:
    return OrthoParam(
        kind=kind,
        dim=dim,
        params=np.asarray(params, dtype=float),
        plan=None if plan is None else tuple(tuple(p) for p in plan),
    )
