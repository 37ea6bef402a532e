"""Pairwise Jukes-Cantor objective on a point configuration and its gradient."""

import logging

import numpy as np

from hyptree.exceptions import DomainError, OptimizerError
from hyptree.hypgeom.hyperboloid import TangentVector, distance_matrix
from hyptree.optimizer.configuration import PointConfiguration
from hyptree.optimizer.kernels import STATUS_COLLISION, STATUS_OK, gradient_at
from hyptree.seqmodel.alignment import DiffRateMatrix
from hyptree.seqmodel.jukes_cantor import pairwise_loglik

logger = logging.getLogger(__name__)


def aligned_rates(config: PointConfiguration, stats: DiffRateMatrix) -> np.ndarray:
    """Difference rates ordered like the points of ``config``.

    Raises:
        DomainError: If the configuration and the statistics cover different taxa
    """
    if config.labels == stats.labels:
        return np.asarray(stats.rates)
    if sorted(config.labels) != sorted(stats.labels):
        raise DomainError(
            "Configuration labels do not match the difference rates",
            ", ".join(sorted(set(config.labels) ^ set(stats.labels))),
        )
    return np.asarray(stats.reindex(config.labels).rates)


def coords_objective(coords: np.ndarray, rates: np.ndarray, L: int, rho: float) -> float:
    """Objective of a raw coordinate array; see :func:`objective`."""
    d = distance_matrix(coords, rho)
    iu = np.triu_indices(coords.shape[0], k=1)
    return float(2.0 / L * np.sum(pairwise_loglik(rates[iu], L, d[iu])))


def objective(config: PointConfiguration, stats: DiffRateMatrix) -> float:
    """Scaled pairwise log-likelihood (1/L) sum_{i != j} loglik(r_ij, L, d_ij).

    Every unordered pair is counted twice. The value is -inf when a pair with
    differing sequences sits at distance 0.

    Raises:
        DomainError: If fewer than two points are given or the labels differ
    """
    if config.n < 2:
        raise DomainError("The objective needs at least two points", f"N={config.n}")
    return coords_objective(config.coords, aligned_rates(config, stats), stats.L, config.rho)


def point_gradient(config: PointConfiguration, stats: DiffRateMatrix, i: int) -> TangentVector:
    """Riemannian gradient of the objective with respect to point i.

    Pairs at distance 0 contribute nothing. A zero-distance pair whose
    sequences differ makes the gradient undefined.

    Raises:
        DomainError: If i is out of range or the labels differ
        OptimizerError: If the gradient is undefined or not finite
    """
    if not 0 <= i < config.n:
        raise DomainError("Point index out of range", f"i={i}, N={config.n}")
    rates = aligned_rates(config, stats)
    out = np.empty(config.m + 1)
    status, j = gradient_at(config.coords, rates, config.rho, i, out)
    if status != STATUS_OK:
        reason = "coincident points" if status == STATUS_COLLISION else "non-finite gradient"
        raise OptimizerError(
            "Gradient is undefined", reason, pair=(config.labels[i], config.labels[j])
        )
    return TangentVector(config.points[i], out)
