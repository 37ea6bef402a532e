"""Rooting and unrooting."""

import logging
from typing import Dict, List, Tuple

import numpy as np

from hyptree.treekit.distances import leaf_distances
from hyptree.treekit.tree import Tree

logger = logging.getLogger(__name__)

_TIE_TOL = 1e-12


def unroot(tree: Tree) -> Tree:
    """Drop the root, merging its two edges when it has exactly two children.

    Two-leaf trees keep their single internal node.
    """
    kids = tree.children[0]
    if len(kids) != 2 or tree.n_leaves == 2:
        return tree.with_rooted(False)
    a, b = kids
    merged = tree.lengths[a] + tree.lengths[b]
    adjacency: Dict[int, List[Tuple[int, float]]] = {
        u: [(v, t) for v, t in nbrs if v != 0] for u, nbrs in tree.adjacency.items() if u != 0
    }
    adjacency[a].insert(0, (b, merged))
    adjacency[b].insert(0, (a, merged))
    anchor = b if tree.children[a] == () else a
    return Tree.from_adjacency(adjacency, anchor, tree.named_nodes, rooted=False)


def _path(tree: Tree, u: int, v: int) -> List[int]:
    """Nodes on the path from u to v."""
    up_u, up_v = [u], [v]
    seen = {u}
    while tree.parents[up_u[-1]] >= 0:
        up_u.append(tree.parents[up_u[-1]])
        seen.add(up_u[-1])
    while up_v[-1] not in seen:
        up_v.append(tree.parents[up_v[-1]])
    lca = up_v[-1]
    return up_u[: up_u.index(lca) + 1] + up_v[-2::-1]


def midpoint_root(tree: Tree) -> Tree:
    """Root a tree at the midpoint of its longest leaf-to-leaf path.

    Among equally long paths the pair of endpoint labels that sorts first is
    used. If the midpoint falls on a node the tree is rooted at that node.
    """
    tree = unroot(tree)
    if tree.n_leaves == 2:
        half = tree.total_length / 2.0
        return Tree(tree.parents, (0.0, half, half), tree.names, rooted=True)

    dm = leaf_distances(tree)
    upper = np.triu(dm.d, k=1)
    longest = upper.max()
    i, j = np.argwhere(upper >= longest - _TIE_TOL)[0]
    a, b = dm.labels[i], dm.labels[j]
    path = _path(tree, tree.node_of[a], tree.node_of[b])
    half = longest / 2.0
    if half <= _TIE_TOL:
        return Tree.from_adjacency(tree.adjacency, path[1], tree.named_nodes, rooted=True)
    logger.debug("Midpoint rooting on %s-%s, diameter %.6f", a, b, longest)

    adjacency = {u: list(nbrs) for u, nbrs in tree.adjacency.items()}
    travelled = 0.0
    for u, v in zip(path, path[1:]):
        t = next(length for w, length in adjacency[u] if w == v)
        if abs(travelled - half) <= _TIE_TOL:
            return Tree.from_adjacency(adjacency, u, tree.named_nodes, rooted=True)
        if travelled + t > half + _TIE_TOL:
            root = max(adjacency) + 1
            left, right = half - travelled, travelled + t - half
            adjacency[u] = [(w, s) if w != v else (root, left) for w, s in adjacency[u]]
            adjacency[v] = [(w, s) if w != u else (root, right) for w, s in adjacency[v]]
            adjacency[root] = [(u, left), (v, right)]
            return Tree.from_adjacency(adjacency, root, tree.named_nodes, rooted=True)
        travelled += t
    return Tree.from_adjacency(adjacency, path[-1], tree.named_nodes, rooted=True)
