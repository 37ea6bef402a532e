"""Construction helpers shared by the optimizer tests."""

import numpy as np

from hyptree.hypgeom.hyperboloid import (
    HyperPoint,
    TangentVector,
    basepoint,
    exp_map,
    minkowski_form,
    project_to_tangent,
)
from hyptree.optimizer.configuration import PointConfiguration
from hyptree.seqmodel.alignment import DiffRateMatrix
from hyptree.seqmodel.jukes_cantor import ml_pairwise_distance

# Two-taxon ML distance at a quarter of sites differing.
ML_QUARTER = float(ml_pairwise_distance(0.25))


def unit_tangent(x: HyperPoint, rng: np.random.Generator) -> TangentVector:
    u = project_to_tangent(x, rng.standard_normal(x.m + 1))
    return TangentVector(x, u / np.sqrt(minkowski_form(u, u)))


def moved(config: PointConfiguration, i: int, v: TangentVector) -> PointConfiguration:
    """Configuration with point i sent along v."""
    coords = np.array(config.coords)
    coords[i] = exp_map(config.points[i], v).coords
    return PointConfiguration(coords, config.rho, config.labels)


def pair_at(d: float, m: int = 3, rho: float = 0.5) -> PointConfiguration:
    """Two points at distance d, the first at the basepoint."""
    origin = basepoint(m, rho)
    e1 = np.zeros(m + 1)
    e1[0] = 1.0
    other = exp_map(origin, TangentVector(origin, d * e1))
    return PointConfiguration.from_points([origin, other], ("A", "B"))


def pair_stats(r: float, L: int = 100) -> DiffRateMatrix:
    return DiffRateMatrix(("A", "B"), L, np.array([[0.0, r], [r, 0.0]]))
