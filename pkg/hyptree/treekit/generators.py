"""Random and deterministic tree generators."""

import logging
from typing import Dict, List, Tuple

import numpy as np

from hyptree.exceptions import DomainError
from hyptree.treekit.tree import Tree
from hyptree.utils.seeds import make_rng

logger = logging.getLogger(__name__)

# Interval of the simulation regime's branch lengths (substitutions/site).
DEFAULT_EDGE_INTERVAL = (0.05, 0.2)


def taxon_labels(n: int) -> List[str]:
    """Labels T01, T02, ... zero-padded to a common width."""
    width = max(2, len(str(n)))
    return [f"T{k:0{width}d}" for k in range(1, n + 1)]


def random_topology(n_leaves: int, seed: int) -> Tree:
    """Draw an unrooted binary topology by a pure-birth process.

    Growth starts from the three-leaf star; each step picks a current leaf
    uniformly and splits it into two. Labels are shuffled at the end so that
    every labeling of a shape is equally likely. All lengths are 0.

    Raises:
        DomainError: If fewer than three leaves are requested
    """
    if n_leaves < 3:
        raise DomainError("A random topology needs at least 3 leaves", f"n={n_leaves}")
    rng = make_rng(seed)

    adjacency: Dict[int, List[Tuple[int, float]]] = {0: []}
    leaves: List[int] = []
    for node in (1, 2, 3):
        adjacency[node] = [(0, 0.0)]
        adjacency[0].append((node, 0.0))
        leaves.append(node)

    next_node = 4
    while len(leaves) < n_leaves:
        pos = int(rng.integers(len(leaves)))
        parent = leaves[pos]
        left, right = next_node, next_node + 1
        next_node += 2
        for child in (left, right):
            adjacency[child] = [(parent, 0.0)]
            adjacency[parent].append((child, 0.0))
        leaves[pos] = left
        leaves.append(right)

    labels = taxon_labels(n_leaves)
    order = rng.permutation(n_leaves)
    names = {leaf: labels[order[k]] for k, leaf in enumerate(leaves)}
    return Tree.from_adjacency(adjacency, 0, names, rooted=False)


def sample_edge_lengths(tree: Tree, lo: float, hi: float, seed: int) -> Tree:
    """Replace every edge length by an independent uniform draw from [lo, hi].

    Raises:
        DomainError: If the interval is empty or negative
    """
    if not (np.isfinite(lo) and np.isfinite(hi)) or lo < 0 or lo > hi:
        raise DomainError("Invalid edge length interval", f"[{lo}, {hi}]")
    rng = make_rng(seed)
    draws = rng.uniform(lo, hi, size=tree.edge_count)
    return tree.with_lengths([0.0, *draws])


def balanced_tree(n_leaves: int = 8, edge_length: float = 0.25) -> Tree:
    """Rooted perfectly balanced binary tree with all edges of equal length.

    Leaves are labeled T01, T02, ... from left to right, so the first two
    leaves form a cherry.
    """
    if n_leaves < 2 or n_leaves & (n_leaves - 1):
        raise DomainError("Balanced trees need a power-of-two leaf count", f"n={n_leaves}")
    if edge_length < 0:
        raise DomainError("Edge length must be nonnegative", f"{edge_length}")
    labels = taxon_labels(n_leaves)
    adjacency: Dict[int, List[Tuple[int, float]]] = {0: []}
    frontier = [0]
    next_node = 1
    while len(frontier) < n_leaves:
        grown = []
        for parent in frontier:
            for child in (next_node, next_node + 1):
                adjacency[child] = [(parent, edge_length)]
                adjacency[parent].append((child, edge_length))
                grown.append(child)
            next_node += 2
        frontier = grown
    names = dict(zip(frontier, labels))
    return Tree.from_adjacency(adjacency, 0, names, rooted=True)
