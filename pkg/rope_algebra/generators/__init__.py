from rope_algebra.generators.builders import (
    conjugate,
    embed_in_larger,
    from_matrices,
    infer_block_plan,
    mixed_2d,
    standard_2d,
    toral_basis,
)
from rope_algebra.generators.models import (
    DEGENERATE,
    FrequencySchedule,
    GeneratorSet,
    as_position,
    as_positions,
)
from rope_algebra.generators.rotation import (
    rope_matrix_dense,
    rope_matrix_fast,
    rotate_vectors,
)
from rope_algebra.generators.schemas import (
    GeneratorSetSchema,
    load_generator_set,
    save_generator_set,
)

__all__ = [
    "DEGENERATE",
    "FrequencySchedule",
    "GeneratorSet",
    "GeneratorSetSchema",
    "as_position",
    "as_positions",
    "conjugate",
    "embed_in_larger",
    "from_matrices",
    "infer_block_plan",
    "load_generator_set",
    "mixed_2d",
    "rope_matrix_dense",
    "rope_matrix_fast",
    "rotate_vectors",
    "save_generator_set",
    "standard_2d",
    "toral_basis",
]
