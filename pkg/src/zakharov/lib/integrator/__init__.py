from .checkpoint import (
    Checkpoint,
    load_checkpoint,
    save_checkpoint,
)
from .params import (
    SchemeParams,
    Variant,
)
from .recorder import TrajectoryRecorder
from .reference import rk4_reference
from .scheme import (
    Observer,
    Scheme,
    evolve,
    lie_step_filtered,
    lie_step_unfiltered,
)
from .subflows import (
    linear_subflow,
    nonlinear_subflow,
)

__all__ = [
    "Checkpoint",
    "Observer",
    "Scheme",
    "SchemeParams",
    "TrajectoryRecorder",
    "Variant",
    "evolve",
    "lie_step_filtered",
    "lie_step_unfiltered",
    "linear_subflow",
    "load_checkpoint",
    "nonlinear_subflow",
    "rk4_reference",
    "save_checkpoint",
]
