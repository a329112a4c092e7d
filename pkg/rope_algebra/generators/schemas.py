# =============================================================================
# rope_algebra/generators/schemas.py - Generator Set JSON Format
# =============================================================================

from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel, Field

from rope_algebra.exceptions import ParseError, RopeAlgebraError
from rope_algebra.generators.builders import from_matrices
from rope_algebra.generators.models import FrequencySchedule, GeneratorSet
from rope_algebra.utils.serialization import matrix_to_rows, read_model, rows_to_matrix, write_model


class GeneratorSetSchema(BaseModel):
    d: int = Field(gt=0)
    n_axes: int = Field(gt=0)
    blocks_per_axis: int = Field(gt=0)
    base: float
    frequencies: List[float]
    basis: List[List[float]]
    q: Optional[List[float]] = None
    flags: List[str] = []
    seed: Optional[int] = None


def generator_set_to_schema(gen: GeneratorSet, seed: Optional[int] = None) -> GeneratorSetSchema:
    return GeneratorSetSchema(
        d=gen.d,
        n_axes=gen.n_axes,
        blocks_per_axis=gen.blocks_per_axis,
        base=gen.schedule.base,
        frequencies=list(gen.schedule.values),
        basis=[matrix_to_rows(b) for b in gen.basis],
        q=None if gen.q is None else matrix_to_rows(gen.q),
        flags=list(gen.flags),
        seed=seed,
    )


def generator_set_from_schema(schema: GeneratorSetSchema) -> GeneratorSet:
    if len(schema.basis) != schema.n_axes:
        raise ParseError(
            "basis length does not match n_axes",
            detail={"n_axes": schema.n_axes, "basis": len(schema.basis)},
        )
    basis = np.stack([rows_to_matrix(rows, schema.d) for rows in schema.basis])
    q = None if schema.q is None else rows_to_matrix(schema.q, schema.d)
    try:
        schedule = FrequencySchedule(base=schema.base, values=tuple(schema.frequencies))
        return from_matrices(
            basis,
            schedule=schedule,
            q=q,
            blocks_per_axis=schema.blocks_per_axis,
            flags=schema.flags,
        )
    except ParseError:
        raise
    except RopeAlgebraError as e:
        raise ParseError("generator set file is inconsistent", detail=str(e)) from e


def save_generator_set(
    gen: GeneratorSet, path: Optional[Union[str, Path]] = None, seed: Optional[int] = None
) -> None:
    write_model(generator_set_to_schema(gen, seed=seed), path)


def load_generator_set(path: Union[str, Path]) -> GeneratorSet:
    return generator_set_from_schema(read_model(GeneratorSetSchema, path))
