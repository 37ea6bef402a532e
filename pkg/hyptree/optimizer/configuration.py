"""Labelled point configurations on a shared hyperboloid."""

import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np
import pandas as pd

from hyptree.exceptions import ContractViolationError, DataValidationError, DomainError, ParseError
from hyptree.hypgeom.hyperboloid import (
    GEOMETRY_TOL,
    HyperPoint,
    distance_matrix,
    minkowski_form,
    random_hyperpoint,
)
from hyptree.treekit.distances import DistanceMatrix
from hyptree.utils.seeds import make_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PointConfiguration:
    """N labelled points of H^m_rho, stored as an (N, m+1) coordinate array.

    Row k holds the Minkowski coordinates of the taxon ``labels[k]``.
    """

    coords: np.ndarray
    rho: float
    labels: Tuple[str, ...]

    def __post_init__(self) -> None:
        coords = np.array(self.coords, dtype=float)
        labels = tuple(self.labels)
        if coords.ndim != 2 or coords.shape[1] < 3:
            raise ContractViolationError(
                "Coordinates must be an (N, m+1) array with m >= 2", f"got shape {coords.shape}"
            )
        if coords.shape[0] != len(labels):
            raise DataValidationError(
                "One label per point is required", f"{len(labels)} labels, {coords.shape[0]} points"
            )
        if len(set(labels)) != len(labels) or any(not label for label in labels):
            raise DataValidationError("Labels must be unique and nonempty")
        if not self.rho > 0:
            raise DomainError("Radius must be positive", f"rho={self.rho}")
        if not np.all(np.isfinite(coords)):
            raise ContractViolationError("Coordinates must be finite")
        if np.any(coords[:, -1] <= 0):
            raise ContractViolationError("Last coordinate must be positive")
        residual = np.abs(minkowski_form(coords, coords) + self.rho**2)
        bound = GEOMETRY_TOL * np.maximum(self.rho**2, coords[:, -1] ** 2)
        if np.any(residual > bound):
            k = int(np.argmax(residual - bound))
            raise ContractViolationError(
                "Point is not on the hyperboloid", f"{labels[k]}: residual {residual[k]:.3e}"
            )
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def m(self) -> int:
        return self.coords.shape[1] - 1

    @cached_property
    def points(self) -> Tuple[HyperPoint, ...]:
        return tuple(HyperPoint(row, self.rho) for row in self.coords)

    @classmethod
    def from_points(
        cls, points: Sequence[HyperPoint], labels: Sequence[str]
    ) -> "PointConfiguration":
        """Stack HyperPoints sharing (m, rho) into a configuration."""
        if not points:
            raise DomainError("A configuration needs at least one point")
        first = points[0]
        if any(not first.same_space(p) for p in points):
            raise ContractViolationError("Points live on different hyperboloids")
        return cls(np.stack([p.coords for p in points]), first.rho, tuple(labels))

    def reindex(self, labels: Sequence[str]) -> "PointConfiguration":
        """Reorder the points to follow ``labels``."""
        if sorted(labels) != sorted(self.labels):
            raise DomainError("Label sets differ")
        pos = {label: k for k, label in enumerate(self.labels)}
        return PointConfiguration(
            self.coords[[pos[label] for label in labels]], self.rho, tuple(labels)
        )

    def to_frame(self) -> pd.DataFrame:
        columns = [f"x{k}" for k in range(1, self.m + 2)]
        frame = pd.DataFrame(self.coords, index=list(self.labels), columns=columns)
        frame.insert(0, "rho", self.rho)
        frame.index.name = "taxon"
        return frame

    def to_csv(self, path: Union[str, Path]) -> None:
        """Write one row per taxon: rho followed by the Minkowski coordinates."""
        self.to_frame().to_csv(path, float_format="%.17g")

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "PointConfiguration":
        """Read a configuration written by :meth:`to_csv`.

        Raises:
            ParseError: If the file lacks a rho column or holds non-numeric data
        """
        try:
            frame = pd.read_csv(path, index_col=0, float_precision="round_trip")
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise ParseError("Malformed configuration CSV", str(e))
        if "rho" not in frame.columns:
            raise ParseError("Configuration CSV has no rho column", str(path))
        try:
            rho_values = frame["rho"].to_numpy(dtype=float)
            coords = frame.drop(columns="rho").to_numpy(dtype=float)
        except ValueError as e:
            raise ParseError("Non-numeric coordinate", str(e))
        if rho_values.size == 0 or np.any(rho_values != rho_values[0]):
            raise ParseError("Configuration CSV needs a single rho value", str(path))
        return cls(coords, float(rho_values[0]), tuple(str(x) for x in frame.index))


def config_distances(config: PointConfiguration) -> DistanceMatrix:
    """Geodesic distances between all points of a configuration."""
    d = distance_matrix(config.coords, config.rho)
    d = np.triu(d, k=1)
    return DistanceMatrix(config.labels, d + d.T)


def random_configuration(
    labels: Sequence[str], m: int, rho: float, radius: float, seed: int
) -> PointConfiguration:
    """Points drawn around the basepoint at geodesic distance uniform in [0, radius]."""
    rng = make_rng(seed)
    points = [random_hyperpoint(m, rho, rng, radius) for _ in labels]
    logger.debug("Drew %d random points in H^%d_%g within radius %g", len(points), m, rho, radius)
    return PointConfiguration.from_points(points, labels)
