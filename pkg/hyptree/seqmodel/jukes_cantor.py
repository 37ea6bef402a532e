"""Jukes-Cantor substitution model and two-taxon likelihood."""

from typing import Union

import numpy as np
from scipy.special import xlogy

from hyptree.config import DEFAULT_DISTANCE_CAP
from hyptree.exceptions import DomainError

ArrayLike = Union[float, np.ndarray]

# Distance reported for saturated pairs (r >= 3/4).
T_MAX = DEFAULT_DISTANCE_CAP

_SATURATION = 0.75


def _as_times(t: ArrayLike) -> np.ndarray:
    times = np.asarray(t, dtype=float)
    if np.any(times < 0) or np.any(np.isnan(times)):
        raise DomainError("Branch lengths must be nonnegative", f"t={t}")
    return times


def _scalar_or_array(x: np.ndarray) -> ArrayLike:
    return float(x) if x.ndim == 0 else x


def jc_p_same(t: ArrayLike) -> ArrayLike:
    """Probability that a site shows the same base after time t: 1/4 + 3/4 e^(-4t/3)."""
    decay = np.expm1(-4.0 * _as_times(t) / 3.0)
    return _scalar_or_array(1.0 + 0.75 * decay)


def jc_p_diff(t: ArrayLike) -> ArrayLike:
    """Probability of a specific different base after time t: 1/4 - 1/4 e^(-4t/3)."""
    decay = np.expm1(-4.0 * _as_times(t) / 3.0)
    return _scalar_or_array(-0.25 * decay)


def pairwise_loglik(r: ArrayLike, L: int, t: ArrayLike) -> ArrayLike:
    """Two-taxon log-likelihood L * [(1 - r) log p_same(t) + r log p_diff(t)].

    The constant L log(1/4) of the stationary distribution is omitted. A
    positive mismatch rate at t = 0 gives -inf.
    """
    rates = np.asarray(r, dtype=float)
    p_same = np.asarray(jc_p_same(t))
    p_diff = np.asarray(jc_p_diff(t))
    with np.errstate(divide="ignore"):
        value = L * ((1.0 - rates) * np.log(p_same) + xlogy(rates, p_diff))
    return _scalar_or_array(np.asarray(value))


def ml_pairwise_distance(r: ArrayLike, cap: float = T_MAX) -> ArrayLike:
    """Maximum-likelihood divergence time -3/4 ln(1 - 4r/3), capped at ``cap``.

    Rates at or above 3/4 are saturated and return ``cap``.

    Raises:
        DomainError: If a rate lies outside [0, 1]
    """
    rates = np.asarray(r, dtype=float)
    if np.any(rates < 0) or np.any(rates > 1) or np.any(np.isnan(rates)):
        raise DomainError("Difference rates must lie in [0, 1]", f"r={r}")
    with np.errstate(divide="ignore", invalid="ignore"):
        times = -0.75 * np.log1p(-4.0 * np.minimum(rates, _SATURATION) / 3.0)
    times = np.where(rates >= _SATURATION, cap, np.minimum(times, cap))
    return _scalar_or_array(np.asarray(times))


def expected_diff_rate(t: ArrayLike) -> ArrayLike:
    """Expected fraction of differing sites after time t: 3 p_diff(t)."""
    return _scalar_or_array(3.0 * np.asarray(jc_p_diff(t)))
