"""Labeled distance matrices and tree path lengths."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np
import pandas as pd

from hyptree.exceptions import DataValidationError, DomainError, ParseError
from hyptree.treekit.tree import Tree

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric nonnegative matrix with a zero diagonal, indexed by taxon labels."""

    labels: Tuple[str, ...]
    d: np.ndarray

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        d = np.array(self.d, dtype=float)
        n = len(labels)
        if d.shape != (n, n):
            raise DataValidationError("Matrix shape does not match labels", f"{d.shape} vs {n}")
        if len(set(labels)) != n or any(not label for label in labels):
            raise DataValidationError("Labels must be unique and nonempty")
        if not np.all(np.isfinite(d)):
            raise DataValidationError("Distances must be finite")
        if not np.array_equal(d, d.T):
            raise DataValidationError("Distance matrix must be symmetric")
        if np.any(np.diag(d) != 0.0):
            raise DataValidationError("Distance matrix must have a zero diagonal")
        if np.any(d < 0.0):
            raise DataValidationError("Distances must be nonnegative")
        d.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return len(self.labels)

    def reindex(self, labels: Sequence[str]) -> "DistanceMatrix":
        """Reorder rows and columns to follow ``labels``."""
        if sorted(labels) != sorted(self.labels):
            raise DomainError("Label sets differ")
        pos = {label: i for i, label in enumerate(self.labels)}
        idx = [pos[label] for label in labels]
        return DistanceMatrix(tuple(labels), self.d[np.ix_(idx, idx)])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.d, index=list(self.labels), columns=list(self.labels))

    def to_csv(self, path: Union[str, Path]) -> None:
        """Write as CSV with a header row and column of labels."""
        self.to_frame().to_csv(path, float_format="%.17g")

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "DistanceMatrix":
        """Read a CSV written by :meth:`to_csv`."""
        try:
            frame = pd.read_csv(path, index_col=0, float_precision="round_trip")
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise ParseError("Cannot read distance matrix", str(e))
        rows = [str(x) for x in frame.index]
        cols = [str(x) for x in frame.columns]
        if rows != cols:
            raise ParseError("Row and column labels differ", str(path))
        try:
            values = frame.to_numpy(dtype=float)
        except ValueError as e:
            raise ParseError("Non-numeric distance", str(e))
        return cls(tuple(rows), values)


def leaf_distances(tree: Tree) -> DistanceMatrix:
    """Path-length distances between all leaves, with labels in sorted order."""
    labels = tree.leaf_labels
    n = len(labels)
    index = {tree.node_of[label]: k for k, label in enumerate(labels)}
    adjacency = tree.adjacency
    d = np.zeros((n, n))
    for k, label in enumerate(labels):
        start = tree.node_of[label]
        dist = {start: 0.0}
        stack = [start]
        while stack:
            u = stack.pop()
            for v, t in adjacency[u]:
                if v not in dist:
                    dist[v] = dist[u] + t
                    stack.append(v)
        for node, j in index.items():
            if j > k:
                d[k, j] = d[j, k] = dist[node]
    return DistanceMatrix(labels, d)
