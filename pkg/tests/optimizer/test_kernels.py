"""Tests for the compiled sweep kernels."""

import math

import numpy as np
import pytest

from hyptree.hypgeom.hyperboloid import distance_matrix
from hyptree.optimizer.kernels import (
    STATUS_COLLISION,
    STATUS_OK,
    gauss_seidel_sweep,
    gradient_at,
    nudge,
    pair_weight,
)

from .helpers import ML_QUARTER, pair_at


def test_pair_weight_vanishes_at_ml_distance():
    assert pair_weight(0.25, ML_QUARTER) == pytest.approx(0.0, abs=1e-12)
    assert pair_weight(0.25, 1.0) < 0.0
    assert pair_weight(0.25, 0.1) > 0.0


def test_pair_weight_identical_sequences():
    """With r = 0 the weight is -e^(-4d/3) / p_same(d)."""
    d = 0.4
    p_same = 0.25 + 0.75 * math.exp(-4 * d / 3)
    assert pair_weight(0.0, d) == pytest.approx(-math.exp(-4 * d / 3) / p_same)


def test_gradient_reports_collision_partner():
    coords = np.array(pair_at(0.0).coords)
    rates = np.array([[0.0, 0.25], [0.25, 0.0]])
    status, j = gradient_at(coords, rates, 0.5, 0, np.empty(4))
    assert (status, j) == (STATUS_COLLISION, 1)
    status, j = gradient_at(coords, np.zeros((2, 2)), 0.5, 0, np.empty(4))
    assert (status, j) == (STATUS_OK, -1)


def test_nudge_moves_requested_length():
    coords = np.array(pair_at(0.7).coords)
    before = distance_matrix(coords, 0.5)[0, 1]
    nudge(coords, 0, 0.5, 1e-3)
    moved = np.array(pair_at(0.7).coords)
    # Point 0 sits at the basepoint, where the nudge direction is the first axis.
    assert distance_matrix(np.stack([moved[0], coords[0]]), 0.5)[0, 1] == pytest.approx(1e-3)
    assert distance_matrix(coords, 0.5)[0, 1] == pytest.approx(before - 1e-3)


def test_gauss_seidel_reports_sweep_summary():
    coords = np.array(pair_at(1.0).coords)
    rates = np.array([[0.0, 0.25], [0.25, 0.0]])
    largest, collisions, status, i, j = gauss_seidel_sweep(coords, rates, 0.5, 0.1, 0.05)
    assert status == STATUS_OK and (i, j) == (-1, -1)
    assert collisions == 0
    assert 0.0 < largest <= 0.05
