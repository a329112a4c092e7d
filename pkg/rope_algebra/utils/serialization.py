# =============================================================================
# rope_algebra/utils/serialization.py - JSON Read/Write Helpers
# =============================================================================
"""Every JSON document is written with floats at 17 significant digits
(``format(v, ".17g")``), which round-trips float64 exactly; other values
use the ``json`` module's encoding. Output is indented by two spaces, and
lists of scalars stay on one line.
"""
import json
import math
import sys
from pathlib import Path
from typing import Any, Optional, Type, TypeVar, Union

import numpy as np
from pydantic import BaseModel, ValidationError

from rope_algebra.exceptions import ParseError

ModelT = TypeVar("ModelT", bound=BaseModel)

INDENT = "  "


def matrix_to_rows(matrix: np.ndarray) -> list:
    """Row-major flat list of Python floats."""
    return [float(v) for v in np.asarray(matrix, dtype=float).ravel()]


def rows_to_matrix(values: list, dim: int) -> np.ndarray:
    if len(values) != dim * dim:
        raise ParseError(
            "matrix entry count does not match dimension",
            detail={"expected": dim * dim, "got": len(values)},
        )
    return np.asarray(values, dtype=float).reshape(dim, dim)


def _encode_float(value: float) -> str:
    if not math.isfinite(value):
        return "null"
    text = format(value, ".17g")
    return text if any(c in text for c in ".en") else text + ".0"


def _encode(value: Any, level: int = 0) -> str:
    if isinstance(value, float):
        return _encode_float(value)
    if value is None or isinstance(value, (bool, int, str)):
        return json.dumps(value)
    pad, inner = INDENT * level, INDENT * (level + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_encode(v, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            return "[" + ", ".join(_encode(v, level + 1) for v in value) + "]"
        items = [inner + _encode(v, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot encode {type(value).__name__} as JSON")


def dump_model(model: BaseModel) -> str:
    return _encode(model.model_dump(mode="json")) + "\n"


def write_model(model: BaseModel, path: Optional[Union[str, Path]] = None) -> None:
    """Write to ``path``, or stdout when no path is given."""
    text = dump_model(model)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(path).write_text(text, encoding="utf-8")


def read_model(schema: Type[ModelT], path: Union[str, Path]) -> ModelT:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}", detail=str(e)) from e
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON in {path}", detail=str(e)) from e
    try:
        return schema.model_validate(data)
    except ValidationError as e:
        raise ParseError(
            f"{path} is not a valid {schema.__name__}", detail=str(e)
        ) from e
