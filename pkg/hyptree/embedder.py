"""Initial placement of taxa by embedding a rooted guide tree in the hyperboloid."""

import logging
import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from hyptree.exceptions import DomainError
from hyptree.hypgeom.hyperboloid import (
    HyperPoint,
    TangentVector,
    basepoint,
    exp_map,
    log_map,
    minkowski_form,
    project_to_tangent,
)
from hyptree.optimizer.configuration import PointConfiguration
from hyptree.treekit.tree import Tree
from hyptree.utils.seeds import make_rng

logger = logging.getLogger(__name__)


class EmbeddingConfigIn(BaseModel):
    """Inputs of a tree embedding."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    tree: Tree
    m: int = Field(..., ge=2, description="Hyperbolic dimension")
    rho: float = Field(..., gt=0, description="Hyperboloid radius")
    seed: int = Field(0, description="Seed of the random tangent planes")

    @field_validator("tree")
    @classmethod
    def check_rooted(cls, tree: Tree) -> Tree:
        if not tree.rooted:
            raise DomainError("Tree embedding needs a rooted tree", "midpoint-root it first")
        return tree


def _unit(u: np.ndarray) -> np.ndarray:
    return u / math.sqrt(minkowski_form(u, u))


def _random_unit_tangent(
    x: HyperPoint, rng: np.random.Generator, against: Optional[np.ndarray] = None
) -> np.ndarray:
    """Gaussian direction in T_x, made orthogonal to the unit tangent ``against`` if given."""
    u = project_to_tangent(x, rng.standard_normal(x.m + 1))
    if against is not None:
        u = u - minkowski_form(u, against) * against
    return _unit(u)


def _embed_all_nodes(cfg: EmbeddingConfigIn) -> List[HyperPoint]:
    """Positions of every node of the tree, indexed by node."""
    tree = cfg.tree
    rng = make_rng(cfg.seed)
    positions: List[HyperPoint] = [basepoint(cfg.m, cfg.rho)] * tree.n_nodes

    for node in range(tree.n_nodes):
        kids = tree.sorted_children(node)
        if not kids:
            continue
        x = positions[node]
        to_parent = None
        if node > 0:
            toward = log_map(x, positions[tree.parents[node]])
            if not toward.degenerate:
                to_parent = _unit(toward.vec)

        if to_parent is None:
            e1 = _random_unit_tangent(x, rng)
        else:
            e1 = to_parent
        e2 = _random_unit_tangent(x, rng, against=e1)

        # With a parent, angle 0 is taken by the parent direction.
        slots = len(kids) + (0 if node == 0 else 1)
        first = 0 if node == 0 else 1
        for k, child in enumerate(kids, start=first):
            angle = 2.0 * math.pi * k / slots
            direction = math.cos(angle) * e1 + math.sin(angle) * e2
            v = TangentVector(x, tree.lengths[child] * direction)
            positions[child] = exp_map(x, v)
    return positions


def embed_tree(cfg: EmbeddingConfigIn) -> PointConfiguration:
    """Place the leaves of a rooted tree on H^m_rho.

    The root sits at the basepoint. Each node's children are spread at equal
    angles in a random 2-D plane of its tangent space, at geodesic distance
    equal to their edge lengths. Below the root that plane contains the
    direction back to the parent, which keeps one of the equal angular slots.
    Internal positions are discarded.

    Returns:
        The leaf configuration in sorted label order
    """
    positions = _embed_all_nodes(cfg)
    tree = cfg.tree
    labels = tree.leaf_labels
    config = PointConfiguration.from_points([positions[tree.node_of[t]] for t in labels], labels)
    logger.info("Embedded %d taxa in H^%d with rho=%g", config.n, cfg.m, cfg.rho)
    return config
