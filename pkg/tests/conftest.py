"""Pytest configuration and shared fixtures."""

import numpy as np
import pytest

from hyptree.seqmodel.alignment import Alignment, diff_rates
from hyptree.treekit.generators import balanced_tree, random_topology, sample_edge_lengths
from hyptree.treekit.newick import parse_newick
from hyptree.treekit.tree import Tree


@pytest.fixture
def rng():
    """Seeded generator for property loops."""
    return np.random.default_rng(20240101)


@pytest.fixture
def balanced_8():
    """Balanced 8-leaf rooted tree with every edge 0.25."""
    return balanced_tree(8, 0.25)


@pytest.fixture
def quartet():
    """Rooted quartet AB|CD with unit edges."""
    return parse_newick("((A:1,B:1):1,(C:1,D:1):1);")


@pytest.fixture
def small_alignment():
    """Four short sequences with known mismatch counts."""
    return Alignment(
        ("A", "B", "C", "D"),
        ("ACGTACGTAC", "ACGTACGTAA", "ACGAACCTAC", "TCGAACCTAG"),
    )


@pytest.fixture
def small_stats(small_alignment):
    """Difference rates of the small alignment."""
    return diff_rates(small_alignment)


@pytest.fixture
def make_tree():
    """Factory for random unrooted trees with uniform edge lengths."""

    def _make(n_leaves: int, seed: int, lo: float = 0.05, hi: float = 0.2) -> Tree:
        return sample_edge_lengths(random_topology(n_leaves, seed), lo, hi, seed + 1)

    return _make
