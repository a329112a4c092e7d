# =============================================================================
# rope_algebra/ortho/schemas.py - OrthoParam JSON Format
# =============================================================================

from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field

from rope_algebra.exceptions import ParseError, RopeAlgebraError
from rope_algebra.ortho.models import OrthoParam, ortho_param
from rope_algebra.utils.serialization import read_model, write_model


class OrthoParamSchema(BaseModel):
    kind: Literal["cayley", "exp", "givens"]
    dim: int = Field(gt=0)
    params: List[float]
    plan: Optional[List[Tuple[int, int]]] = None


def ortho_param_to_schema(p: OrthoParam) -> OrthoParamSchema:
    return OrthoParamSchema(
        kind=p.kind.value,
        dim=p.dim,
        params=[float(v) for v in p.params],
        plan=None if p.plan is None else [tuple(pair) for pair in p.plan],
    )


def ortho_param_from_schema(schema: OrthoParamSchema) -> OrthoParam:
    try:
        return ortho_param(schema.kind, schema.dim, schema.params, schema.plan)
    except RopeAlgebraError as e:
        raise ParseError("orthogonal parameter file is inconsistent", detail=str(e)) from e


def save_ortho_param(p: OrthoParam, path: Optional[Union[str, Path]] = None) -> None:
    write_model(ortho_param_to_schema(p), path)


def load_ortho_param(path: Union[str, Path]) -> OrthoParam:
    return ortho_param_from_schema(read_model(OrthoParamSchema, path))
