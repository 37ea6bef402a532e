"""Hyperboloid geometry primitives and four-point diagnostics."""

from hyptree.hypgeom.fourpoint import (
    QuadrupleDelta,
    four_point_delta,
    max_quadruple_delta,
    sampled_delta,
)
from hyptree.hypgeom.hyperboloid import (
    HyperPoint,
    TangentVector,
    basepoint,
    distance_gradient,
    distance_matrix,
    exp_map,
    hyperbolic_distance,
    lift,
    log_map,
    minkowski_form,
    project_to_tangent,
    random_hyperpoint,
    scale_point,
)
from hyptree.hypgeom.poincare import PoincarePoint, from_poincare, poincare_distance, to_poincare

__all__ = [
    "HyperPoint",
    "PoincarePoint",
    "QuadrupleDelta",
    "TangentVector",
    "basepoint",
    "distance_gradient",
    "distance_matrix",
    "exp_map",
    "four_point_delta",
    "from_poincare",
    "hyperbolic_distance",
    "lift",
    "log_map",
    "max_quadruple_delta",
    "minkowski_form",
    "poincare_distance",
    "project_to_tangent",
    "random_hyperpoint",
    "sampled_delta",
    "scale_point",
    "to_poincare",
]
