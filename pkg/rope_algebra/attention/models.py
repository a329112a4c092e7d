# =============================================================================
# rope_algebra/attention/models.py - Token Batch Models and JSON Format
# =============================================================================

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel

from rope_algebra.exceptions import DimensionError, DomainError, ParseError
from rope_algebra.utils.serialization import read_model, write_model

# (count_q, count_k) attention logits, no softmax.
ScoreMatrix = np.ndarray


@dataclass(frozen=True, eq=False)
class TokenBatch:
    """Query or key vectors with their N-dimensional positions."""

    positions: np.ndarray  # (count, n_axes)
    vectors: np.ndarray  # (count, d)

    def __post_init__(self):
        positions = np.array(self.positions, dtype=float)
        vectors = np.array(self.vectors, dtype=float)
        if positions.ndim != 2 or vectors.ndim != 2:
            raise DimensionError(
                "positions and vectors must be 2-D",
                detail={"positions": positions.shape, "vectors": vectors.shape},
            )
        if positions.shape[0] != vectors.shape[0]:
            raise DimensionError(
                "positions and vectors disagree on token count",
                detail={"positions": positions.shape[0], "vectors": vectors.shape[0]},
            )
        if not (np.all(np.isfinite(positions)) and np.all(np.isfinite(vectors))):
            raise DomainError("token batch has non-finite entries")
        positions.setflags(write=False)
        vectors.setflags(write=False)
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "vectors", vectors)

    @property
    def count(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    @property
    def n_axes(self) -> int:
        return int(self.positions.shape[1])

    def shifted(self, offset: np.ndarray) -> "TokenBatch":
        """Same vectors with every position translated by ``offset``."""
        return TokenBatch(positions=self.positions + np.asarray(offset, dtype=float), vectors=self.vectors)


class TokenBatchSchema(BaseModel):
    positions: List[List[float]]
    vectors: List[List[float]]


def save_token_batch(batch: TokenBatch, path: Optional[Union[str, Path]] = None) -> None:
    write_model(
        TokenBatchSchema(positions=batch.positions.tolist(), vectors=batch.vectors.tolist()), path
    )


def load_token_batch(path: Union[str, Path]) -> TokenBatch:
    schema = read_model(TokenBatchSchema, path)
    try:
        return TokenBatch(positions=np.array(schema.positions), vectors=np.array(schema.vectors))
    except (DimensionError, DomainError) as e:
        raise ParseError("token batch file is inconsistent", detail=str(e)) from e
