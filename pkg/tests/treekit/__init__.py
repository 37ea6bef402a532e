"""Tests for hyptree.treekit."""
