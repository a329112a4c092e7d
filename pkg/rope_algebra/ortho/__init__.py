from rope_algebra.ortho.models import OrthoKind, OrthoParam, ortho_param
from rope_algebra.ortho.param import (
    OrthoBuild,
    build_orthogonal,
    build_orthogonal_with_info,
    default_givens_plan,
    dexp,
    directional_derivative,
    fd_directional_derivative,
    random_ortho_param,
)
from rope_algebra.ortho.schemas import OrthoParamSchema, load_ortho_param, save_ortho_param

__all__ = [
    "OrthoBuild",
    "OrthoKind",
    "OrthoParam",
    "OrthoParamSchema",
    "build_orthogonal",
    "build_orthogonal_with_info",
    "default_givens_plan",
    "dexp",
    "directional_derivative",
    "fd_directional_derivative",
    "load_ortho_param",
    "ortho_param",
    "random_ortho_param",
    "save_ortho_param",
]
