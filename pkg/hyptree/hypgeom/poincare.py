"""Conversions between the hyperboloid and the Poincare ball of radius rho."""

from dataclasses import dataclass

import numpy as np

from hyptree.exceptions import ContractViolationError, DomainError
from hyptree.hypgeom.hyperboloid import HyperPoint


@dataclass(frozen=True, eq=False)
class PoincarePoint:
    """A point of the open ball of radius rho."""

    coords: np.ndarray
    rho: float

    def __post_init__(self) -> None:
        coords = np.array(self.coords, dtype=float)
        if coords.ndim != 1 or coords.size < 2:
            raise ContractViolationError(
                "PoincarePoint needs a 1-D vector of at least 2 coordinates",
                f"got shape {coords.shape}",
            )
        if not self.rho > 0:
            raise DomainError("Radius must be positive", f"rho={self.rho}")
        norm = float(np.linalg.norm(coords))
        if norm >= self.rho:
            raise DomainError("Point lies outside the open ball", f"|y|={norm} >= rho={self.rho}")
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "rho", float(self.rho))

    @property
    def m(self) -> int:
        return self.coords.size


def to_poincare(x: HyperPoint) -> PoincarePoint:
    """Stereographic projection rho / (x_{m+1} + rho) * (x_1, ..., x_m)."""
    rho = x.rho
    return PoincarePoint(rho / (x.coords[-1] + rho) * x.coords[:-1], rho)


def from_poincare(y: PoincarePoint) -> HyperPoint:
    """Inverse of :func:`to_poincare`."""
    rho = y.rho
    r2 = float(np.dot(y.coords, y.coords))
    factor = 2.0 * rho**2 / (rho**2 - r2)
    coords = np.append(factor * y.coords, factor * (rho**2 + r2) / (2.0 * rho))
    return HyperPoint(coords, rho)


def poincare_distance(p: PoincarePoint, q: PoincarePoint) -> float:
    """Geodesic distance between two points of the ball."""
    if p.m != q.m or p.rho != q.rho:
        raise ContractViolationError("Points live in different balls")
    rho2 = p.rho**2
    gap = float(np.sum((p.coords - q.coords) ** 2))
    denom = (rho2 - float(np.dot(p.coords, p.coords))) * (rho2 - float(np.dot(q.coords, q.coords)))
    return p.rho * float(np.arccosh(1.0 + 2.0 * rho2 * gap / denom))
