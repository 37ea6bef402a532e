"""
Test package for hyptree.
"""
