"""Bipartition-based tree comparison."""

from typing import Dict, FrozenSet, List, Set

from hyptree.exceptions import DomainError
from hyptree.treekit.tree import Tree

Split = FrozenSet[str]


def _clades(tree: Tree) -> List[FrozenSet[str]]:
    """Leaf label set below every node."""
    below: List[Set[str]] = [set() for _ in range(tree.n_nodes)]
    for i in range(tree.n_nodes - 1, -1, -1):
        if not tree.children[i]:
            below[i].add(tree.names[i])  # type: ignore[arg-type]
        if i > 0:
            below[tree.parents[i]] |= below[i]
    return [frozenset(s) for s in below]


def _normalize(side: FrozenSet[str], labels: FrozenSet[str], smallest: str) -> Split:
    """Represent a bipartition by the side without the smallest label."""
    return labels - side if smallest in side else side


def split_lengths(tree: Tree) -> Dict[Split, float]:
    """Total edge length behind every bipartition, trivial ones included.

    The two edges at a bifurcating root induce the same bipartition and are
    summed.
    """
    clades = _clades(tree)
    labels = clades[0]
    smallest = min(labels)
    out: Dict[Split, float] = {}
    for i in range(1, tree.n_nodes):
        key = _normalize(clades[i], labels, smallest)
        out[key] = out.get(key, 0.0) + tree.lengths[i]
    return out


def splits(tree: Tree) -> Set[Split]:
    """Non-trivial bipartitions of a tree, each as the side without the smallest label."""
    n = tree.n_leaves
    return {s for s in split_lengths(tree) if 2 <= len(s) <= n - 2}


def rf_distance(t1: Tree, t2: Tree) -> int:
    """Robinson-Foulds distance: bipartitions present in exactly one of the trees.

    Raises:
        DomainError: If the trees have different leaf labels
    """
    if t1.leaf_labels != t2.leaf_labels:
        missing = set(t1.leaf_labels) ^ set(t2.leaf_labels)
        raise DomainError("Trees have different leaf sets", ", ".join(sorted(missing)))
    return len(splits(t1) ^ splits(t2))
