"""Tests for alignments, FASTA I/O and difference rates."""

import logging

import numpy as np
import pytest

from hyptree.exceptions import DataValidationError, DomainError, ParseError
from hyptree.seqmodel.alignment import (
    Alignment,
    DiffRateMatrix,
    diff_rates,
    expected_diff_rates,
    ml_distance_matrix,
    read_fasta,
    write_fasta,
)
from hyptree.seqmodel.jukes_cantor import T_MAX
from hyptree.treekit.distances import leaf_distances


def test_alignment_shape(small_alignment):
    assert small_alignment.n == 4
    assert small_alignment.L == 10


def test_lowercase_is_normalized():
    a = Alignment(("x", "y"), ("acgt", "ACGT"))
    assert a.sequences == ("ACGT", "ACGT")


@pytest.mark.parametrize(
    "taxa, sequences",
    [
        (("A", "A"), ("AC", "AG")),
        (("A", "B"), ("AC", "ACG")),
        (("A", "B"), ("AC", "AN")),
        (("A", ""), ("AC", "AG")),
        ((), ()),
    ],
)
def test_invalid_alignments(taxa, sequences):
    with pytest.raises(DataValidationError):
        Alignment(taxa, sequences)


def test_diff_rates_counts(small_stats):
    """Rates are mismatch counts over L."""
    assert small_stats.rates[0, 1] == pytest.approx(0.1)
    assert small_stats.rates[0, 2] == pytest.approx(0.2)
    assert small_stats.rates[2, 3] == pytest.approx(0.2)
    assert np.array_equal(small_stats.rates, small_stats.rates.T)
    assert small_stats.L == 10


def test_diff_rate_matrix_validation():
    with pytest.raises(DataValidationError):
        DiffRateMatrix(("A", "B"), 10, np.array([[0.0, 0.1], [0.2, 0.0]]))
    with pytest.raises(DataValidationError):
        DiffRateMatrix(("A", "B"), 10, np.array([[0.0, 1.5], [1.5, 0.0]]))
    with pytest.raises(DomainError):
        DiffRateMatrix(("A", "B"), 0, np.zeros((2, 2)))


def test_reindex(small_stats):
    moved = small_stats.reindex(["D", "C", "B", "A"])
    assert moved.rates[0, 1] == small_stats.rates[3, 2]
    with pytest.raises(DomainError):
        small_stats.reindex(["A", "B", "C", "E"])


def test_ml_distances_log_saturation(caplog):
    stats = DiffRateMatrix(("A", "B", "C"), 4, np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0.0]]))
    with caplog.at_level(logging.WARNING):
        dm = ml_distance_matrix(stats)
    assert dm.d[0, 1] == T_MAX
    assert dm.d[0, 2] == 0.0
    assert "Saturated pair" in caplog.text
    assert "Identical sequences" in caplog.text


def test_expected_rates_match_tree(balanced_8):
    """Noiseless rates invert to the tree's leaf distances."""
    stats = expected_diff_rates(balanced_8)
    dm = ml_distance_matrix(stats)
    truth = leaf_distances(balanced_8).reindex(dm.labels)
    assert np.allclose(dm.d, truth.d)


def test_fasta_round_trip_with_wrapping(tmp_path, small_alignment):
    path = tmp_path / "a.fasta"
    write_fasta(small_alignment, path, width=4)
    assert path.read_text().splitlines()[1] == "ACGT"
    assert read_fasta(path) == small_alignment


def test_fasta_ignores_blank_and_comment_lines(tmp_path):
    path = tmp_path / "a.fasta"
    path.write_text("; comment\n>one\nAC\n\nGT\n>two\nACGA\n")
    a = read_fasta(path)
    assert a.taxa == ("one", "two")
    assert a.sequences == ("ACGT", "ACGA")


@pytest.mark.parametrize("text", ["", "ACGT\n>a\nACGT\n"])
def test_fasta_parse_errors(tmp_path, text):
    path = tmp_path / "bad.fasta"
    path.write_text(text)
    with pytest.raises(ParseError):
        read_fasta(path)


def test_fasta_duplicate_labels(tmp_path):
    path = tmp_path / "dup.fasta"
    path.write_text(">a\nAC\n>a\nAG\n")
    with pytest.raises(DataValidationError):
        read_fasta(path)
