"""Distance-based tree reconstruction."""

import logging
from abc import ABC, abstractmethod
from typing import Dict, List, Tuple

import numpy as np

from hyptree.exceptions import DomainError
from hyptree.treekit.distances import DistanceMatrix
from hyptree.treekit.tree import Tree

logger = logging.getLogger(__name__)


class TreeBuilder(ABC):
    """Turns a distance matrix into an unrooted tree."""

    name: str = "builder"

    @abstractmethod
    def build(self, d: DistanceMatrix) -> Tree:
        """Reconstruct an unrooted tree whose leaves are the matrix labels."""
        pass


class NeighborJoining(TreeBuilder):
    """Canonical neighbor joining on the Q-criterion.

    Ties are broken towards the lexicographically smallest index pair of the
    current matrix; negative branch lengths are clamped to 0.
    """

    name = "nj"

    def build(self, d: DistanceMatrix) -> Tree:
        n = d.n
        if n < 3:
            raise DomainError("Neighbor joining needs at least 3 taxa", f"N={n}")

        dist = d.d.copy()
        nodes = list(range(n))
        names = dict(enumerate(d.labels))
        adjacency: Dict[int, List[Tuple[int, float]]] = {i: [] for i in range(n)}
        next_node = n

        def join(u: int, v: int, length: float) -> None:
            if length < 0.0:
                logger.warning("Clamping negative branch length %.3g to 0", length)
                length = 0.0
            adjacency[u].append((v, length))
            adjacency[v].append((u, length))

        while len(nodes) > 3:
            k = len(nodes)
            totals = dist.sum(axis=1)
            q = (k - 2) * dist - totals[:, None] - totals[None, :]
            q[np.tril_indices(k)] = np.inf
            i, j = divmod(int(np.argmin(q)), k)

            li = 0.5 * dist[i, j] + (totals[i] - totals[j]) / (2.0 * (k - 2))
            lj = dist[i, j] - li
            u = next_node
            next_node += 1
            adjacency[u] = []
            join(u, nodes[i], li)
            join(u, nodes[j], lj)

            row = 0.5 * (dist[i] + dist[j] - dist[i, j])
            dist[i, :] = row
            dist[:, i] = row
            dist[i, i] = 0.0
            dist = np.delete(np.delete(dist, j, axis=0), j, axis=1)
            nodes[i] = u
            del nodes[j]

        a, b, c = 0, 1, 2
        center = next_node
        adjacency[center] = []
        join(center, nodes[a], 0.5 * (dist[a, b] + dist[a, c] - dist[b, c]))
        join(center, nodes[b], 0.5 * (dist[a, b] + dist[b, c] - dist[a, c]))
        join(center, nodes[c], 0.5 * (dist[a, c] + dist[b, c] - dist[a, b]))
        return Tree.from_adjacency(adjacency, center, names, rooted=False)


def neighbor_joining(d: DistanceMatrix) -> Tree:
    """Unrooted neighbor-joining tree of a distance matrix."""
    return NeighborJoining().build(d)
