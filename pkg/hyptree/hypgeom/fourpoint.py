"""Gromov four-point diagnostics for finite metric spaces."""

import itertools
import logging
from dataclasses import dataclass
from math import comb
from typing import TYPE_CHECKING, Tuple

import numpy as np

from hyptree.exceptions import ContractViolationError, DomainError
from hyptree.hypgeom.hyperboloid import distance_matrix
from hyptree.utils.seeds import make_rng

if TYPE_CHECKING:
    from hyptree.optimizer.configuration import PointConfiguration

logger = logging.getLogger(__name__)

# Enumerate every quadruple at or below this many points.
EXACT_ENUMERATION_LIMIT = 40

_SAMPLE_BATCH = 4096


@dataclass(frozen=True)
class QuadrupleDelta:
    """Four-point defect of a specific quadruple of points."""

    indices: Tuple[int, int, int, int]
    delta: float

    def __post_init__(self) -> None:
        if len(set(self.indices)) != 4:
            raise ContractViolationError("Quadruple indices must be distinct", f"{self.indices}")
        if self.delta < 0:
            raise ContractViolationError("delta must be nonnegative", f"{self.delta}")


def _quadruple_deltas(d: np.ndarray, quads: np.ndarray) -> np.ndarray:
    """(S1 - S2) / 2 for every row of a (K, 4) index array."""
    a, b, c, e = quads.T
    sums = np.stack(
        [d[a, e] + d[b, c], d[a, b] + d[c, e], d[a, c] + d[b, e]],
        axis=1,
    )
    sums.sort(axis=1)
    return (sums[:, 2] - sums[:, 1]) / 2.0


def four_point_delta(d: np.ndarray) -> float:
    """Smallest delta for which the four-point condition holds on a 4x4 distance matrix."""
    d = np.asarray(d, dtype=float)
    if d.shape != (4, 4):
        raise ContractViolationError("four_point_delta expects a 4x4 matrix", f"{d.shape}")
    return float(_quadruple_deltas(d, np.arange(4)[None, :])[0])


def _all_quadruples(n: int) -> np.ndarray:
    return np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(n), 4)),
        dtype=np.int64,
        count=4 * comb(n, 4),
    ).reshape(-1, 4)


def _sampled_quadruples(n: int, n_samples: int, rng: np.random.Generator) -> np.ndarray:
    batches = []
    remaining = n_samples
    while remaining > 0:
        size = min(remaining, _SAMPLE_BATCH)
        keys = rng.random((size, n))
        batches.append(np.argpartition(keys, 4, axis=1)[:, :4])
        remaining -= size
    return np.concatenate(batches, axis=0)


def max_quadruple_delta(d: np.ndarray, n_samples: int, seed: int) -> QuadrupleDelta:
    """Largest four-point defect over the quadruples of a distance matrix.

    All quadruples are enumerated when there are at most 40 points or when
    there are no more quadruples than ``n_samples``; otherwise ``n_samples``
    random quadruples are drawn.

    Args:
        d: Symmetric (N, N) distance matrix
        n_samples: Number of quadruples to draw when sampling
        seed: Seed of the sampler

    Returns:
        The attaining quadruple (first in draw order on ties)

    Raises:
        DomainError: If there are fewer than 4 points or n_samples < 1
    """
    d = np.asarray(d, dtype=float)
    n = d.shape[0]
    if d.ndim != 2 or d.shape[1] != n:
        raise ContractViolationError("Distance matrix must be square", f"{d.shape}")
    if n < 4:
        raise DomainError("Four-point diagnostics need at least 4 points", f"N={n}")
    if n_samples < 1:
        raise DomainError("n_samples must be positive", f"{n_samples}")

    if n <= EXACT_ENUMERATION_LIMIT or comb(n, 4) <= n_samples:
        quads = _all_quadruples(n)
    else:
        quads = _sampled_quadruples(n, n_samples, make_rng(seed))
    deltas = _quadruple_deltas(d, quads)
    best = int(np.argmax(deltas))
    indices = tuple(sorted(int(i) for i in quads[best]))
    logger.debug("Checked %d quadruples, max delta %.6g", len(quads), deltas[best])
    return QuadrupleDelta(indices, max(float(deltas[best]), 0.0))  # type: ignore[arg-type]


def sampled_delta(config: "PointConfiguration", n_samples: int, seed: int) -> float:
    """Monte Carlo estimate of the delta-hyperbolicity of a point configuration."""
    if len(config.coords) < 4:
        raise DomainError("sampled_delta needs at least 4 points", f"N={len(config.coords)}")
    return max_quadruple_delta(distance_matrix(config.coords, config.rho), n_samples, seed).delta
