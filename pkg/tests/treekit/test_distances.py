"""Tests for distance matrices and leaf distances."""

import numpy as np
import pytest

from hyptree.exceptions import DataValidationError, DomainError, ParseError
from hyptree.hypgeom.fourpoint import max_quadruple_delta
from hyptree.treekit.distances import DistanceMatrix, leaf_distances
from hyptree.treekit.newick import parse_newick


class TestDistanceMatrix:
    """Tests for DistanceMatrix validation and CSV I/O."""

    def test_asymmetric_rejected(self):
        """Asymmetric matrices are invalid."""
        with pytest.raises(DataValidationError, match="symmetric"):
            DistanceMatrix(("A", "B"), np.array([[0.0, 1.0], [2.0, 0.0]]))

    def test_nonzero_diagonal_rejected(self):
        """The diagonal must be zero."""
        with pytest.raises(DataValidationError, match="diagonal"):
            DistanceMatrix(("A", "B"), np.array([[1.0, 1.0], [1.0, 0.0]]))

    def test_negative_rejected(self):
        """Distances must be nonnegative."""
        with pytest.raises(DataValidationError, match="nonnegative"):
            DistanceMatrix(("A", "B"), np.array([[0.0, -1.0], [-1.0, 0.0]]))

    def test_reindex(self):
        """Reindexing permutes rows and columns together."""
        dm = DistanceMatrix(("A", "B", "C"), np.array([[0, 1, 2], [1, 0, 3], [2, 3, 0.0]]))
        out = dm.reindex(["C", "A", "B"])
        assert out.labels == ("C", "A", "B")
        assert out.d[0, 2] == 3.0
        with pytest.raises(DomainError):
            dm.reindex(["A", "B", "D"])

    def test_csv_round_trip(self, tmp_path, make_tree):
        """Values survive a CSV round trip bit for bit."""
        dm = leaf_distances(make_tree(9, 3))
        path = tmp_path / "d.csv"
        dm.to_csv(path)
        back = DistanceMatrix.from_csv(path)
        assert back.labels == dm.labels
        np.testing.assert_array_equal(back.d, dm.d)

    def test_csv_keeps_last_digit(self, tmp_path):
        """Values needing all 17 significant digits read back exactly."""
        values = [0.1 + 0.2, 1 / 3, 2 / 7]
        d = np.zeros((4, 4))
        for k, v in enumerate(values, start=1):
            d[0, k] = d[k, 0] = v
        dm = DistanceMatrix(("A", "B", "C", "D"), d)
        path = tmp_path / "d.csv"
        dm.to_csv(path)
        np.testing.assert_array_equal(DistanceMatrix.from_csv(path).d, d)

    def test_csv_label_mismatch(self, tmp_path):
        """Row and column headers must agree."""
        path = tmp_path / "bad.csv"
        path.write_text(",A,B\nA,0,1\nC,1,0\n")
        with pytest.raises(ParseError, match="labels differ"):
            DistanceMatrix.from_csv(path)

    def test_csv_non_numeric(self, tmp_path):
        """Non-numeric cells are a parse error."""
        path = tmp_path / "bad.csv"
        path.write_text(",A,B\nA,0,x\nB,x,0\n")
        with pytest.raises(ParseError):
            DistanceMatrix.from_csv(path)


class TestLeafDistances:
    """Tests for leaf_distances."""

    def test_balanced_tree_row(self, balanced_8):
        """The first leaf of the balanced tree sees (0, 0.5, 1, 1, 1.5, 1.5, 1.5, 1.5)."""
        dm = leaf_distances(balanced_8)
        assert dm.labels[0] == "T01"
        np.testing.assert_array_equal(dm.d[0], [0, 0.5, 1, 1, 1.5, 1.5, 1.5, 1.5])

    def test_star_tree(self):
        """All leaves of a star with edges eps are 2 eps apart."""
        dm = leaf_distances(parse_newick("(A:0.3,B:0.3,C:0.3,D:0.3,E:0.3);"))
        off = dm.d[~np.eye(5, dtype=bool)]
        assert np.all(off == 0.6)

    def test_exact_symmetry(self, make_tree):
        """The matrix is exactly symmetric."""
        dm = leaf_distances(make_tree(15, 4))
        assert np.array_equal(dm.d, dm.d.T)

    def test_four_point_condition(self, make_tree, rng):
        """Every quadruple of a tree metric satisfies the four-point condition."""
        for k in range(100):
            n = int(rng.integers(4, 13))
            dm = leaf_distances(make_tree(n, 1000 + k))
            assert max_quadruple_delta(dm.d, 10, seed=0).delta <= 1e-12

    def test_dyadic_lengths_are_exact(self, balanced_8):
        """With dyadic lengths the four-point defect is exactly zero."""
        assert max_quadruple_delta(leaf_distances(balanced_8).d, 10, seed=0).delta == 0.0
