"""Tests for hyptree.optimizer."""
