"""Geometry of the hyperboloid model of hyperbolic space.

Points of H^m_rho are stored in Minkowski coordinates (x_1, ..., x_m, x_{m+1})
with <x, x>_M = -rho^2 and x_{m+1} > 0.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from hyptree.exceptions import ContractViolationError, DomainError

logger = logging.getLogger(__name__)

# Relative tolerance for hyperboloid membership and tangency checks.
GEOMETRY_TOL = 1e-9


def minkowski_form(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Evaluate the Minkowski bilinear form along the last axis.

    Args:
        u: Array of shape (..., m+1)
        v: Array of shape (..., m+1)

    Returns:
        sum_{i<=m} u_i v_i - u_{m+1} v_{m+1}, a float for 1-D inputs

    Raises:
        ContractViolationError: If the trailing dimensions differ or are below 3
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape[-1] != v.shape[-1]:
        raise ContractViolationError(
            "Dimension mismatch", f"{u.shape[-1]} != {v.shape[-1]}"
        )
    if u.shape[-1] < 3:
        raise ContractViolationError("Minkowski vectors need at least 3 coordinates")
    form = np.sum(u[..., :-1] * v[..., :-1], axis=-1) - u[..., -1] * v[..., -1]
    if np.ndim(form) == 0:
        return float(form)  # type: ignore[return-value]
    return form


def lift(spatial: np.ndarray, rho: float) -> np.ndarray:
    """Append the time coordinate sqrt(rho^2 + |spatial|^2) to spatial coordinates."""
    spatial = np.asarray(spatial, dtype=float)
    last = np.sqrt(rho**2 + np.sum(spatial**2, axis=-1, keepdims=True))
    return np.concatenate([spatial, last], axis=-1)


@dataclass(frozen=True, eq=False)
class HyperPoint:
    """A point on the hyperboloid H^m_rho."""

    coords: np.ndarray
    rho: float

    def __post_init__(self) -> None:
        coords = np.array(self.coords, dtype=float)
        if coords.ndim != 1 or coords.size < 3:
            raise ContractViolationError(
                "HyperPoint needs a 1-D vector of at least 3 coordinates",
                f"got shape {coords.shape}",
            )
        if not self.rho > 0:
            raise DomainError("Radius must be positive", f"rho={self.rho}")
        if not np.all(np.isfinite(coords)):
            raise ContractViolationError("HyperPoint coordinates must be finite")
        if coords[-1] <= 0:
            raise ContractViolationError("Last coordinate must be positive", f"{coords[-1]}")
        residual = abs(minkowski_form(coords, coords) + self.rho**2)
        if residual > GEOMETRY_TOL * max(self.rho**2, coords[-1] ** 2):
            raise ContractViolationError(
                "Point is not on the hyperboloid", f"|<x,x> + rho^2| = {residual:.3e}"
            )
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "rho", float(self.rho))

    @property
    def m(self) -> int:
        """Dimension of the hyperbolic space."""
        return self.coords.size - 1

    @classmethod
    def from_spatial(cls, spatial: np.ndarray, rho: float) -> "HyperPoint":
        """Build a point from its first m coordinates."""
        return cls(lift(spatial, rho), rho)

    def same_space(self, other: "HyperPoint") -> bool:
        return self.m == other.m and self.rho == other.rho


@dataclass(frozen=True, eq=False)
class TangentVector:
    """A vector of the tangent space at ``base``.

    ``degenerate`` marks the zero vector returned where a map is undefined
    (coincident points).
    """

    base: HyperPoint
    vec: np.ndarray
    degenerate: bool = False

    def __post_init__(self) -> None:
        vec = np.array(self.vec, dtype=float)
        if vec.shape != self.base.coords.shape:
            raise ContractViolationError(
                "Tangent vector shape does not match its base point",
                f"{vec.shape} != {self.base.coords.shape}",
            )
        scale = np.linalg.norm(self.base.coords) * np.linalg.norm(vec)
        if abs(minkowski_form(self.base.coords, vec)) > GEOMETRY_TOL * max(scale, 1e-300):
            raise ContractViolationError("Vector is not tangent at its base point")
        vec.flags.writeable = False
        object.__setattr__(self, "vec", vec)

    @property
    def norm(self) -> float:
        """Length under the restricted (positive-definite) Minkowski form."""
        return float(np.sqrt(max(minkowski_form(self.vec, self.vec), 0.0)))

    def scaled(self, factor: float) -> "TangentVector":
        return TangentVector(self.base, factor * self.vec, self.degenerate)

    @classmethod
    def zero(cls, base: HyperPoint, degenerate: bool = False) -> "TangentVector":
        return cls(base, np.zeros_like(base.coords), degenerate)


def basepoint(m: int, rho: float) -> HyperPoint:
    """Return (0, ..., 0, rho), the point fixed by the rotation subgroup."""
    if m < 2:
        raise DomainError("Dimension must be at least 2", f"m={m}")
    coords = np.zeros(m + 1)
    coords[-1] = rho
    return HyperPoint(coords, rho)


def project_to_tangent(base: HyperPoint, u: np.ndarray) -> np.ndarray:
    """Orthogonally project an ambient vector onto the tangent space at ``base``."""
    x = base.coords
    return np.asarray(u, dtype=float) + minkowski_form(x, u) / base.rho**2 * x


def _check_same_space(x: HyperPoint, y: HyperPoint) -> None:
    if not x.same_space(y):
        raise ContractViolationError(
            "Points live on different hyperboloids",
            f"(m={x.m}, rho={x.rho}) vs (m={y.m}, rho={y.rho})",
        )


def _cosh_distance(x: HyperPoint, y: HyperPoint) -> float:
    """Clamped arccosh argument -<x,y>_M / rho^2."""
    _check_same_space(x, y)
    return max(1.0, -minkowski_form(x.coords, y.coords) / x.rho**2)


def hyperbolic_distance(x: HyperPoint, y: HyperPoint) -> float:
    """Geodesic distance rho * arccosh(-<x,y>_M / rho^2)."""
    return x.rho * float(np.arccosh(_cosh_distance(x, y)))


def distance_matrix(coords: np.ndarray, rho: float) -> np.ndarray:
    """Pairwise geodesic distances between the rows of an (N, m+1) array."""
    coords = np.asarray(coords, dtype=float)
    spatial = coords[:, :-1]
    gram = spatial @ spatial.T - np.outer(coords[:, -1], coords[:, -1])
    d = rho * np.arccosh(np.maximum(1.0, -gram / rho**2))
    np.fill_diagonal(d, 0.0)
    return d


def exp_map(base: HyperPoint, v: TangentVector) -> HyperPoint:
    """Follow the geodesic from ``base`` along ``v`` for length |v|.

    The result is re-projected onto the hyperboloid by recomputing its last
    coordinate from the spatial ones.

    Raises:
        ContractViolationError: If ``v`` is attached to a different point
    """
    if v.base is not base and not (
        base.same_space(v.base) and np.array_equal(base.coords, v.base.coords)
    ):
        raise ContractViolationError("Tangent vector is not attached to the base point")
    n = v.norm
    if n == 0.0:
        return base
    rho = base.rho
    moved = np.cosh(n / rho) * base.coords + rho * np.sinh(n / rho) * v.vec / n
    return HyperPoint.from_spatial(moved[:-1], rho)


def log_map(base: HyperPoint, y: HyperPoint) -> TangentVector:
    """Tangent vector at ``base`` whose exponential is ``y``; its norm is d(base, y)."""
    c = _cosh_distance(base, y)
    if c <= 1.0:
        return TangentVector.zero(base, degenerate=True)
    d = base.rho * np.arccosh(c)
    scale = d / (base.rho * np.sqrt((c - 1.0) * (c + 1.0)))
    return TangentVector(base, scale * (y.coords - c * base.coords))


def distance_gradient(x: HyperPoint, y: HyperPoint) -> TangentVector:
    """Riemannian gradient at ``x`` of the distance to ``y``.

    The gradient has unit norm and points away from ``y``. For coincident
    points the distance is not differentiable and a zero vector flagged as
    degenerate is returned.
    """
    c = _cosh_distance(x, y)
    if c <= 1.0:
        logger.debug("Degenerate distance gradient for coincident points")
        return TangentVector.zero(x, degenerate=True)
    denom = x.rho * np.sqrt((c - 1.0) * (c + 1.0))
    return TangentVector(x, (c * x.coords - y.coords) / denom)


def scale_point(x: HyperPoint, rho: float) -> HyperPoint:
    """Map a point of H^m_1 to H^m_rho by multiplying its coordinates by rho."""
    if x.rho != 1.0:
        raise ContractViolationError("Only points of the unit hyperboloid can be scaled")
    return HyperPoint(rho * x.coords, rho)


def random_hyperpoint(
    m: int,
    rho: float,
    rng: np.random.Generator,
    radius: float,
    center: Optional[HyperPoint] = None,
) -> HyperPoint:
    """Draw a point at a uniform distance in [0, radius] from ``center`` in a random direction."""
    center = center if center is not None else basepoint(m, rho)
    direction = project_to_tangent(center, rng.standard_normal(m + 1))
    length = np.sqrt(max(minkowski_form(direction, direction), 0.0))
    if length == 0.0:
        return center
    v = TangentVector(center, direction * (radius * rng.random() / length))
    return exp_map(center, v)
