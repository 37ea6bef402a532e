"""Compiled inner loops of the gradient ascent.

The kernels work on raw (N, m+1) coordinate arrays and mutate them in place.
Every kernel reports problems through integer status codes instead of
raising, so that the Python layer can name the offending taxa.
"""

import math

import numpy as np
from numba import njit, prange

STATUS_OK = 0
STATUS_COLLISION = 1
STATUS_NONFINITE = 2

# Length of the nudge applied to a point that coincides with a partner it should differ from.
COLLISION_NUDGE = 1e-8
MAX_NUDGES = 40


@njit(cache=True, nogil=True)
def _minkowski(u, v):
    m = u.shape[0] - 1
    acc = 0.0
    for k in range(m):
        acc += u[k] * v[k]
    return acc - u[m] * v[m]


@njit(cache=True, nogil=True)
def pair_weight(r, d):
    """Derivative in d of (1 - r) log p_same(d) + r log p_diff(d)."""
    decay = math.exp(-4.0 * d / 3.0)
    p_same = 1.0 + 0.75 * math.expm1(-4.0 * d / 3.0)
    p_diff = -0.25 * math.expm1(-4.0 * d / 3.0)
    w = -(1.0 - r) / p_same
    if r > 0.0:
        w += r / (3.0 * p_diff)
    return decay * w


@njit(cache=True, nogil=True)
def gradient_at(coords, rates, rho, i, out):
    """Write the objective gradient at point i into ``out``.

    Each unordered pair appears twice in the objective, hence the factor 2.
    Coincident pairs contribute nothing.

    Returns:
        (status, j): the first partner j causing a collision or a non-finite
        contribution, or (STATUS_OK, -1)
    """
    n = coords.shape[0]
    dim = coords.shape[1]
    x = coords[i]
    rho2 = rho * rho
    for k in range(dim):
        out[k] = 0.0
    for j in range(n):
        if j == i:
            continue
        y = coords[j]
        c = -_minkowski(x, y) / rho2
        if c <= 1.0:
            if rates[i, j] > 0.0:
                return STATUS_COLLISION, j
            continue
        d = rho * math.acosh(c)
        scale = 2.0 * pair_weight(rates[i, j], d) / (rho * math.sqrt((c - 1.0) * (c + 1.0)))
        if not math.isfinite(scale):
            return STATUS_NONFINITE, j
        for k in range(dim):
            out[k] += scale * (c * x[k] - y[k])
    # Remove rounding drift off the tangent space.
    proj = _minkowski(x, out) / rho2
    for k in range(dim):
        out[k] += proj * x[k]
    for k in range(dim):
        if not math.isfinite(out[k]):
            return STATUS_NONFINITE, i
    return STATUS_OK, -1


@njit(cache=True, nogil=True)
def _move(coords, i, v, length, rho):
    """Follow the geodesic from point i along tangent v for ``length``, then re-project."""
    x = coords[i]
    m = x.shape[0] - 1
    a = math.cosh(length / rho)
    b = rho * math.sinh(length / rho) / length
    spatial = 0.0
    for k in range(m):
        x[k] = a * x[k] + b * v[k]
        spatial += x[k] * x[k]
    x[m] = math.sqrt(rho * rho + spatial)


@njit(cache=True, nogil=True)
def nudge(coords, i, rho, length):
    """Move point i by ``length`` along the tangent closest to the first spatial axis."""
    x = coords[i]
    dim = x.shape[0]
    u = np.zeros(dim)
    u[0] = 1.0
    proj = x[0] / (rho * rho)
    for k in range(dim):
        u[k] += proj * x[k]
    norm = math.sqrt(max(_minkowski(u, u), 0.0))
    for k in range(dim):
        u[k] *= length / norm
    _move(coords, i, u, length, rho)


@njit(cache=True, nogil=True)
def _separate(coords, rates, rho, i, grad):
    """Nudge a colliding point i until its gradient is defined.

    The nudge starts at COLLISION_NUDGE and doubles while the pair is still
    unresolvable in floating point.

    Returns:
        (status, j, total nudge length)
    """
    moved = 0.0
    length = COLLISION_NUDGE
    status, j = STATUS_COLLISION, -1
    for _ in range(MAX_NUDGES):
        nudge(coords, i, rho, length)
        moved += length
        status, j = gradient_at(coords, rates, rho, i, grad)
        if status != STATUS_COLLISION:
            return status, j, moved
        length *= 2.0
    return status, j, moved


@njit(cache=True, nogil=True)
def _step(coords, i, grad, rho, learning_rate, max_step):
    """Take a truncated step of learning_rate * grad from point i; return its length."""
    length = learning_rate * math.sqrt(max(_minkowski(grad, grad), 0.0))
    if length == 0.0:
        return 0.0
    factor = learning_rate
    if length > max_step:
        factor *= max_step / length
        length = max_step
    _move(coords, i, grad * factor, length, rho)
    return length


@njit(cache=True, nogil=True)
def gauss_seidel_sweep(coords, rates, rho, learning_rate, max_step):
    """Update the points in index order, each against the current positions of all others.

    Returns:
        (largest step, collisions nudged, status, i, j)
    """
    n, dim = coords.shape
    grad = np.empty(dim)
    largest = 0.0
    collisions = 0
    for i in range(n):
        status, j = gradient_at(coords, rates, rho, i, grad)
        if status == STATUS_COLLISION:
            collisions += 1
            status, j, moved = _separate(coords, rates, rho, i, grad)
            largest = max(largest, moved)
        if status != STATUS_OK:
            return largest, collisions, status, i, j
        largest = max(largest, _step(coords, i, grad, rho, learning_rate, max_step))
    return largest, collisions, STATUS_OK, -1, -1


@njit(cache=True, nogil=True, parallel=True)
def _jacobi_gradients(coords, rates, rho, grads, statuses, partners):
    for i in prange(coords.shape[0]):
        status, j = gradient_at(coords, rates, rho, i, grads[i])
        statuses[i] = status
        partners[i] = j


@njit(cache=True, nogil=True)
def jacobi_sweep(coords, rates, rho, learning_rate, max_step):
    """Update every point against the sweep-start configuration.

    Gradients are computed in parallel. A point found colliding is nudged
    apart and then stepped against the positions current at that moment.

    Returns:
        (largest step, collisions nudged, status, i, j)
    """
    n, dim = coords.shape
    grads = np.empty((n, dim))
    statuses = np.empty(n, dtype=np.int64)
    partners = np.empty(n, dtype=np.int64)
    _jacobi_gradients(coords, rates, rho, grads, statuses, partners)
    for i in range(n):
        if statuses[i] == STATUS_NONFINITE:
            return 0.0, 0, STATUS_NONFINITE, i, partners[i]
    largest = 0.0
    collisions = 0
    for i in range(n):
        if statuses[i] == STATUS_COLLISION:
            collisions += 1
            status, j, moved = _separate(coords, rates, rho, i, grads[i])
            largest = max(largest, moved)
            if status != STATUS_OK:
                return largest, collisions, status, i, j
        largest = max(largest, _step(coords, i, grads[i], rho, learning_rate, max_step))
    return largest, collisions, STATUS_OK, -1, -1
