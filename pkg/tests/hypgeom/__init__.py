"""Tests for hyptree.hypgeom."""
