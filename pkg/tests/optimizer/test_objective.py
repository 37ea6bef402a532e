"""Tests for the pairwise objective and its gradient."""

import itertools

import numpy as np
import pytest

from hyptree.exceptions import DomainError
from hyptree.optimizer.configuration import PointConfiguration, config_distances
from hyptree.optimizer.objective import objective, point_gradient
from hyptree.seqmodel.alignment import DiffRateMatrix
from hyptree.seqmodel.jukes_cantor import pairwise_loglik

from .helpers import ML_QUARTER, moved, pair_at, pair_stats, unit_tangent

FD_STEP = 1e-5


def test_coincident_identical_pair_scores_zero():
    config = pair_at(0.0)
    assert objective(config, pair_stats(0.0)) == 0.0
    assert point_gradient(config, pair_stats(0.0), 0).norm == 0.0


def test_counts_every_pair_twice(random_instance):
    """Objective equals (2/L) times the sum over unordered pairs."""
    config, stats = random_instance(5, 3, 0.5, 1)
    d = config_distances(config).d
    rates = stats.reindex(config.labels).rates
    expected = sum(
        pairwise_loglik(rates[i, j], stats.L, d[i, j])
        for i, j in itertools.combinations(range(5), 2)
    )
    assert objective(config, stats) == pytest.approx(2.0 / stats.L * expected)


def test_maximized_at_ml_distance():
    """For two taxa the objective peaks where the distance is the ML distance."""
    grid = np.linspace(0.05, 1.0, 191)
    values = [objective(pair_at(d), pair_stats(0.25)) for d in grid]
    assert grid[int(np.argmax(values))] == pytest.approx(ML_QUARTER, abs=0.005)


def test_stationary_at_ml_distance():
    for i in (0, 1):
        assert point_gradient(pair_at(ML_QUARTER), pair_stats(0.25), i).norm < 1e-8


def test_gradient_points_toward_ml_distance():
    """Too far apart the gradient pulls the pair together, too close it pushes them apart."""
    for d, sign in ((1.0, -1.0), (0.1, 1.0)):
        config = pair_at(d)
        g = point_gradient(config, pair_stats(0.25), 1)
        nudged = moved(config, 1, g.scaled(1e-4 / g.norm))
        assert np.sign(config_distances(nudged).d[0, 1] - d) == sign


@pytest.mark.parametrize(
    "n, m, rho", list(itertools.product([3, 5, 8], [2, 3, 10], [0.2, 0.5, 1.0]))
)
def test_gradient_matches_finite_differences(random_instance, rng, n, m, rho):
    config, stats = random_instance(n, m, rho, 10 * n + m)
    for i in range(n):
        u = unit_tangent(config.points[i], rng)
        g = point_gradient(config, stats, i)
        fd = (
            objective(moved(config, i, u.scaled(FD_STEP)), stats)
            - objective(moved(config, i, u.scaled(-FD_STEP)), stats)
        ) / (2 * FD_STEP)
        analytic = float(g.vec[:-1] @ u.vec[:-1] - g.vec[-1] * u.vec[-1])
        assert abs(fd - analytic) <= 1e-4 * max(1.0, abs(analytic))


def test_invariant_under_rotations(random_instance, rng):
    """Rotating the spatial coordinates is an isometry fixing the basepoint."""
    config, stats = random_instance(6, 4, 0.5, 3)
    q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    coords = np.array(config.coords)
    coords[:, :-1] = coords[:, :-1] @ q
    rotated = PointConfiguration(coords, config.rho, config.labels)
    assert objective(rotated, stats) == pytest.approx(objective(config, stats), rel=1e-12)


def test_label_order_does_not_matter(random_instance):
    config, stats = random_instance(5, 3, 0.5, 2)
    shuffled = stats.reindex(list(reversed(stats.labels)))
    assert objective(config, shuffled) == pytest.approx(objective(config, stats))


def test_label_mismatch(random_instance):
    config, _ = random_instance(3, 2, 0.5, 0)
    other = DiffRateMatrix(("X", "Y", "Z"), 10, np.zeros((3, 3)))
    with pytest.raises(DomainError):
        objective(config, other)


def test_index_out_of_range(random_instance):
    config, stats = random_instance(3, 2, 0.5, 0)
    with pytest.raises(DomainError):
        point_gradient(config, stats, 3)


def test_single_point_rejected():
    config = PointConfiguration(pair_at(0.5).coords[:1], 0.5, ("A",))
    stats = DiffRateMatrix(("A",), 10, np.zeros((1, 1)))
    with pytest.raises(DomainError):
        objective(config, stats)
