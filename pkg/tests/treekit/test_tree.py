"""Tests for the Tree data structure and Newick I/O."""

import pytest

from hyptree.exceptions import DataValidationError, ParseError
from hyptree.treekit.compare import rf_distance, split_lengths
from hyptree.treekit.newick import parse_newick, write_newick
from hyptree.treekit.tree import Tree


class TestTree:
    """Tests for Tree validation and accessors."""

    def test_quartet_structure(self, quartet):
        """The quartet has four leaves, a bifurcating root and unit edges."""
        assert quartet.rooted
        assert quartet.n_leaves == 4
        assert quartet.leaf_labels == ("A", "B", "C", "D")
        assert quartet.is_binary()
        assert all(t == 1.0 for t in quartet.lengths[1:])

    def test_preorder_required(self):
        """Parents must precede their children."""
        with pytest.raises(DataValidationError, match="preorder"):
            Tree((-1, 2, 0), (0.0, 1.0, 1.0), (None, "A", "B"))

    def test_negative_length_rejected(self):
        """Edge lengths must be nonnegative."""
        with pytest.raises(DataValidationError, match="nonnegative"):
            Tree((-1, 0, 0), (0.0, -1.0, 1.0), (None, "A", "B"))

    def test_duplicate_labels_rejected(self):
        """Leaf labels must be unique."""
        with pytest.raises(DataValidationError, match="Duplicate"):
            Tree((-1, 0, 0), (0.0, 1.0, 1.0), (None, "A", "A"))

    def test_min_label_and_sorted_children(self):
        """Children are ordered by their smallest descendant label."""
        t = parse_newick("((D:1,C:1):1,(B:1,A:1):1);")
        order = [t.min_label[c] for c in t.sorted_children(0)]
        assert order == ["A", "C"]

    def test_depths(self, balanced_8):
        """Leaves of the balanced tree all sit 0.75 below the root."""
        depths = balanced_8.depths()
        assert all(depths[i] == 0.75 for i in balanced_8.leaves)

    def test_with_lengths(self, quartet):
        """with_lengths replaces lengths and keeps topology."""
        t = quartet.with_lengths([0.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0])
        assert t.total_length == 12.0
        assert rf_distance(t, quartet) == 0


class TestParseNewick:
    """Tests for parse_newick."""

    def test_two_leaves(self):
        """A two-leaf tree has both edges of length 1."""
        t = parse_newick("(A:1,B:1);")
        assert t.n_leaves == 2
        assert t.lengths[1:] == (1.0, 1.0)
        assert t.rooted

    def test_quartet_split(self, quartet):
        """The quartet has the single non-trivial split AB|CD."""
        keys = [s for s in split_lengths(quartet) if len(s) == 2]
        assert keys == [frozenset({"C", "D"})]

    def test_missing_lengths_default_to_zero(self):
        """Lengths are optional."""
        t = parse_newick("(A,B,C);")
        assert not t.rooted
        assert t.lengths == (0.0, 0.0, 0.0, 0.0)

    def test_quoted_labels_and_comments(self):
        """Quoted labels keep spaces and escaped quotes; comments are skipped."""
        t = parse_newick("('a b':1,'it''s':2[comment],C:3)root;")
        assert set(t.leaf_labels) == {"a b", "it's", "C"}

    def test_scientific_notation(self):
        """Lengths may use exponents."""
        t = parse_newick("(A:1e-3,B:2.5E1);")
        assert t.lengths[1:] == (0.001, 25.0)

    @pytest.mark.parametrize(
        "text, offset",
        [
            ("(A:1,B:1;", 8),
            ("(A:1,,B:1);", 5),
            ("(A:x,B:1);", 3),
            ("(A:1,B:1)", 9),
            ("(A:1,B:1); extra", 11),
        ],
    )
    def test_malformed_input_reports_offset(self, text, offset):
        """Malformed input raises ParseError with the byte offset."""
        with pytest.raises(ParseError) as info:
            parse_newick(text)
        assert info.value.offset == offset

    def test_offset_counts_bytes(self):
        """Offsets count UTF-8 bytes, not characters."""
        with pytest.raises(ParseError) as info:
            parse_newick("(é:1,,B:1);")
        assert info.value.offset == 6

    def test_duplicate_labels(self):
        """Duplicate leaf labels are a validation error."""
        with pytest.raises(DataValidationError):
            parse_newick("(A:1,A:1);")


class TestWriteNewick:
    """Tests for write_newick."""

    def test_two_leaves(self):
        """Lengths are written with six decimals."""
        assert write_newick(parse_newick("(A:1,B:1);")) == "(A:1.000000,B:1.000000);"

    def test_canonical_order(self):
        """Isomorphic trees with different child orders serialize identically."""
        a = parse_newick("((B:1,A:2):1,(D:1,C:1):1);")
        b = parse_newick("((C:1,D:1):1,(A:2,B:1):1);")
        assert write_newick(a) == write_newick(b) == (
            "((A:2.000000,B:1.000000):1.000000,(C:1.000000,D:1.000000):1.000000);"
        )

    def test_unrooted_anchor_is_canonical(self):
        """Unrooted trees anchored at different nodes serialize identically."""
        a = parse_newick("(A:1,B:1,(C:1,D:1):0.5);")
        b = parse_newick("(C:1,D:1,(A:1,B:1):0.5);")
        assert write_newick(a) == write_newick(b)

    def test_balanced_tree(self, balanced_8):
        """Every length of the balanced example tree is written as 0.250000."""
        text = write_newick(balanced_8)
        assert text.count(":0.250000") == 14
        assert text.count(":") == 14

    def test_quotes_special_labels(self):
        """Labels with Newick punctuation are quoted."""
        t = parse_newick("('a,b':1,C:1);")
        assert write_newick(t) == "(C:1.000000,'a,b':1.000000);"

    def test_round_trip_random_trees(self, make_tree):
        """parse(write(t)) preserves topology and lengths to 1e-6."""
        for seed in range(30):
            t = make_tree(12, seed)
            back = parse_newick(write_newick(t))
            assert rf_distance(t, back) == 0
            original, parsed = split_lengths(t), split_lengths(back)
            assert original.keys() == parsed.keys()
            for key, length in original.items():
                assert parsed[key] == pytest.approx(length, abs=1e-6)
