"""Tests for sequence simulation."""

import numpy as np
import pytest

from hyptree.exceptions import DomainError
from hyptree.seqmodel.alignment import diff_rates
from hyptree.seqmodel.jukes_cantor import expected_diff_rate
from hyptree.seqmodel.simulate import simulate_alignment
from hyptree.treekit.distances import leaf_distances
from hyptree.treekit.newick import parse_newick


def test_same_seed_same_alignment(balanced_8):
    assert simulate_alignment(balanced_8, 50, 3) == simulate_alignment(balanced_8, 50, 3)
    assert simulate_alignment(balanced_8, 50, 3) != simulate_alignment(balanced_8, 50, 4)


def test_taxa_sorted_and_length(balanced_8):
    a = simulate_alignment(balanced_8, 37, 0)
    assert a.taxa == tuple(sorted(balanced_8.leaf_labels))
    assert a.L == 37


def test_zero_length_edges_copy_sequences():
    tree = parse_newick("(A:0,B:0);")
    a = simulate_alignment(tree, 200, 1)
    assert a.sequences[0] == a.sequences[1]


def test_rates_approach_expectation(balanced_8):
    """Long alignments show difference rates near 3 p_diff(d)."""
    a = simulate_alignment(balanced_8, 20000, 11)
    stats = diff_rates(a)
    expected = np.asarray(expected_diff_rate(leaf_distances(balanced_8).reindex(a.taxa).d))
    np.fill_diagonal(expected, 0.0)
    assert np.abs(stats.rates - expected).max() < 0.02


def test_nonpositive_length_rejected(balanced_8):
    with pytest.raises(DomainError):
        simulate_alignment(balanced_8, 0, 0)
