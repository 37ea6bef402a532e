"""Point configurations and the gradient ascent that fits them to sequence data."""

from hyptree.optimizer.ascent import OptimizationResult, ascent_step, optimize
from hyptree.optimizer.configuration import (
    PointConfiguration,
    config_distances,
    random_configuration,
)
from hyptree.optimizer.objective import objective, point_gradient
from hyptree.optimizer.tracing import (
    JsonlTraceSink,
    ListTraceSink,
    TraceReference,
    TraceSink,
    read_trace,
)

__all__ = [
    "JsonlTraceSink",
    "ListTraceSink",
    "OptimizationResult",
    "PointConfiguration",
    "TraceReference",
    "TraceSink",
    "ascent_step",
    "config_distances",
    "objective",
    "optimize",
    "point_gradient",
    "random_configuration",
    "read_trace",
]
