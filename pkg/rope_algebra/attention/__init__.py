from rope_algebra.attention.models import (
    ScoreMatrix,
    TokenBatch,
    TokenBatchSchema,
    load_token_batch,
    save_token_batch,
)
from rope_algebra.attention.services import (
    attention_scores,
    random_batch,
    recover_displacement,
    relative_scores_oracle,
    rotate_batch,
)

__all__ = [
    "ScoreMatrix",
    "TokenBatch",
    "TokenBatchSchema",
    "attention_scores",
    "load_token_batch",
    "random_batch",
    "recover_displacement",
    "relative_scores_oracle",
    "rotate_batch",
    "save_token_batch",
]
