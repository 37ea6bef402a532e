"""Trees: data structure, Newick I/O, generation, reconstruction and comparison.

Branch-length tuning lives in :mod:`hyptree.treekit.branch_lengths`, which
depends on the sequence model and is imported directly.
"""

from hyptree.treekit.compare import rf_distance, split_lengths, splits
from hyptree.treekit.distances import DistanceMatrix, leaf_distances
from hyptree.treekit.generators import (
    balanced_tree,
    random_topology,
    sample_edge_lengths,
    taxon_labels,
)
from hyptree.treekit.newick import parse_newick, read_newick, write_newick, write_newick_file
from hyptree.treekit.nj import NeighborJoining, TreeBuilder, neighbor_joining
from hyptree.treekit.rooting import midpoint_root, unroot
from hyptree.treekit.tree import Tree

__all__ = [
    "DistanceMatrix",
    "NeighborJoining",
    "Tree",
    "TreeBuilder",
    "balanced_tree",
    "leaf_distances",
    "midpoint_root",
    "neighbor_joining",
    "parse_newick",
    "random_topology",
    "read_newick",
    "rf_distance",
    "sample_edge_lengths",
    "split_lengths",
    "splits",
    "taxon_labels",
    "unroot",
    "write_newick",
    "write_newick_file",
]
