from .fields import FiniteField, finite_field, prime_power
from .jets import (
    MAX_SPACE,
    JetCountTask,
    SearchSpaceTooLarge,
    SeriesCheck,
    compare_with_series,
    count_image_jets,
    count_jets,
    singularity_task,
    stabilized_image_count,
)
from .kernels import active_backend
