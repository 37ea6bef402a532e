"""Fixtures for optimizer tests."""

import pytest

from hyptree.optimizer.configuration import random_configuration
from hyptree.seqmodel.alignment import expected_diff_rates


@pytest.fixture
def random_instance(make_tree):
    """Factory for a random configuration with tree-derived difference rates."""

    def _make(n: int, m: int, rho: float, seed: int):
        stats = expected_diff_rates(make_tree(n, seed), L=200)
        config = random_configuration(stats.labels, m, rho, 1.0, seed)
        return config, stats

    return _make
