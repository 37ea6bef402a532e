"""Immutable edge-weighted trees."""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from hyptree.exceptions import DataValidationError, DomainError

# (neighbor, edge length)
Adjacency = Mapping[int, Sequence[Tuple[int, float]]]


@dataclass(frozen=True)
class Tree:
    """A tree stored as a parent array in preorder.

    Node 0 is the root; every other node ``i`` has ``parents[i] < i`` and is
    joined to its parent by an edge of length ``lengths[i]``. Leaves carry
    unique labels in ``names``; internal nodes are unnamed. Unrooted trees
    are anchored at an arbitrary internal node whose position carries no
    meaning.
    """

    parents: Tuple[int, ...]
    lengths: Tuple[float, ...]
    names: Tuple[Optional[str], ...]
    rooted: bool = True

    def __post_init__(self) -> None:
        n = len(self.parents)
        if len(self.lengths) != n or len(self.names) != n:
            raise DataValidationError("parents, lengths and names must have equal length")
        if n < 3:
            raise DataValidationError("A tree needs at least two leaves", f"{n} nodes")
        if self.parents[0] != -1:
            raise DataValidationError("Node 0 must be the root")
        for i in range(1, n):
            if not 0 <= self.parents[i] < i:
                raise DataValidationError("Nodes must be stored in preorder", f"node {i}")
        for i, t in enumerate(self.lengths):
            if not np.isfinite(t) or t < 0:
                raise DataValidationError(
                    "Edge lengths must be finite and nonnegative", f"node {i}: {t}"
                )
        labels = [self.names[i] for i in self.leaves]
        if len(labels) < 2:
            raise DataValidationError("A tree needs at least two leaves", f"{len(labels)} leaves")
        if any(not label for label in labels):
            raise DataValidationError("Every leaf needs a nonempty label")
        if len(set(labels)) != len(labels):
            dupes = sorted({x for x in labels if labels.count(x) > 1})  # type: ignore[type-var]
            raise DataValidationError(
                "Duplicate leaf labels", ", ".join(dupes)  # type: ignore[arg-type]
            )

    @classmethod
    def from_adjacency(
        cls,
        adjacency: Adjacency,
        root: int,
        names: Mapping[int, str],
        rooted: bool,
    ) -> "Tree":
        """Build a tree from an undirected adjacency list, renumbering nodes in preorder.

        Children keep the order in which they appear in ``adjacency``.
        """
        parents: List[int] = []
        lengths: List[float] = []
        out_names: List[Optional[str]] = []
        stack: List[Tuple[int, int, float]] = [(root, -1, 0.0)]
        visited = {root}
        new_id: Dict[int, int] = {}
        while stack:
            node, parent, length = stack.pop()
            new_id[node] = len(parents)
            parents.append(new_id[parent] if parent >= 0 else -1)
            lengths.append(float(length))
            out_names.append(names.get(node))
            nbrs = [(v, t) for v, t in adjacency[node] if v not in visited]
            visited.update(v for v, _ in nbrs)
            stack.extend((v, node, t) for v, t in reversed(nbrs))
        if len(parents) != len(adjacency):
            raise DataValidationError("Adjacency does not describe a connected tree")
        return cls(tuple(parents), tuple(lengths), tuple(out_names), rooted)

    @property
    def n_nodes(self) -> int:
        return len(self.parents)

    @cached_property
    def children(self) -> Tuple[Tuple[int, ...], ...]:
        kids: List[List[int]] = [[] for _ in self.parents]
        for i in range(1, self.n_nodes):
            kids[self.parents[i]].append(i)
        return tuple(tuple(k) for k in kids)

    @cached_property
    def leaves(self) -> Tuple[int, ...]:
        kids: List[int] = [0] * len(self.parents)
        for p in self.parents[1:]:
            kids[p] += 1
        return tuple(i for i, k in enumerate(kids) if k == 0)

    @property
    def n_leaves(self) -> int:
        return len(self.leaves)

    @cached_property
    def leaf_labels(self) -> Tuple[str, ...]:
        """Leaf labels in sorted order."""
        return tuple(sorted(self.names[i] for i in self.leaves))  # type: ignore[misc]

    @cached_property
    def node_of(self) -> Dict[str, int]:
        return {self.names[i]: i for i in self.leaves}  # type: ignore[misc]

    @property
    def named_nodes(self) -> Dict[int, str]:
        return {i: self.names[i] for i in self.leaves}  # type: ignore[misc]

    @cached_property
    def adjacency(self) -> Dict[int, List[Tuple[int, float]]]:
        adj: Dict[int, List[Tuple[int, float]]] = {i: [] for i in range(self.n_nodes)}
        for i in range(1, self.n_nodes):
            p = self.parents[i]
            adj[p].append((i, self.lengths[i]))
            adj[i].append((p, self.lengths[i]))
        return adj

    @cached_property
    def min_label(self) -> Tuple[str, ...]:
        """Smallest leaf label below each node."""
        best: List[Optional[str]] = [
            None if self.children[i] else self.names[i] for i in range(self.n_nodes)
        ]
        for i in range(self.n_nodes - 1, 0, -1):
            p = self.parents[i]
            if best[p] is None or best[i] < best[p]:  # type: ignore[operator]
                best[p] = best[i]
        return tuple(best)  # type: ignore[arg-type]

    def sorted_children(self, node: int) -> Tuple[int, ...]:
        """Children ordered by their smallest descendant label."""
        return tuple(sorted(self.children[node], key=lambda c: self.min_label[c]))

    def degree(self, node: int) -> int:
        return len(self.children[node]) + (0 if node == 0 else 1)

    def is_binary(self) -> bool:
        """True for bifurcating trees (trifurcating anchor when unrooted)."""
        expected = 2 if self.rooted or self.n_leaves == 2 else 3
        if len(self.children[0]) != expected:
            return False
        return all(len(self.children[i]) in (0, 2) for i in range(1, self.n_nodes))

    @property
    def edge_count(self) -> int:
        return self.n_nodes - 1

    @property
    def total_length(self) -> float:
        return float(sum(self.lengths))

    def with_lengths(self, lengths: Sequence[float]) -> "Tree":
        """Copy of this tree with new edge lengths (index 0 ignored)."""
        if len(lengths) != self.n_nodes:
            raise DomainError(
                "One length per node is required", f"{len(lengths)} != {self.n_nodes}"
            )
        new = (0.0,) + tuple(float(t) for t in lengths[1:])
        return Tree(self.parents, new, self.names, self.rooted)

    def with_rooted(self, rooted: bool) -> "Tree":
        return Tree(self.parents, self.lengths, self.names, rooted)

    def depths(self) -> np.ndarray:
        """Distance from the root to every node."""
        out = np.zeros(self.n_nodes)
        for i in range(1, self.n_nodes):
            out[i] = out[self.parents[i]] + self.lengths[i]
        return out
