"""Tests for hyptree.seqmodel."""
