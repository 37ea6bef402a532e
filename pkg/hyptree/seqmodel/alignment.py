"""DNA alignments, FASTA I/O and pairwise difference statistics."""

import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np

from hyptree.config import ALPHABET, DEFAULT_DISTANCE_CAP
from hyptree.exceptions import DataValidationError, DomainError, ParseError
from hyptree.seqmodel.jukes_cantor import expected_diff_rate, ml_pairwise_distance
from hyptree.treekit.distances import DistanceMatrix, leaf_distances
from hyptree.treekit.tree import Tree

logger = logging.getLogger(__name__)

_CODE = np.full(256, 255, dtype=np.uint8)
for _k, _base in enumerate(ALPHABET):
    _CODE[ord(_base)] = _k
    _CODE[ord(_base.lower())] = _k


@dataclass(frozen=True)
class Alignment:
    """N homologous DNA sequences of equal length L."""

    taxa: Tuple[str, ...]
    sequences: Tuple[str, ...]

    def __post_init__(self) -> None:
        taxa = tuple(self.taxa)
        sequences = tuple(s.upper() for s in self.sequences)
        if len(taxa) != len(sequences):
            raise DataValidationError("One sequence per taxon is required")
        if not taxa:
            raise DataValidationError("Alignment is empty")
        if any(not t for t in taxa):
            raise DataValidationError("Taxon labels must be nonempty")
        if len(set(taxa)) != len(taxa):
            dupes = sorted({t for t in taxa if taxa.count(t) > 1})
            raise DataValidationError("Duplicate taxon labels", ", ".join(dupes))
        lengths = {len(s) for s in sequences}
        if len(lengths) != 1:
            raise DataValidationError("Sequences have unequal lengths", str(sorted(lengths)))
        if lengths == {0}:
            raise DataValidationError("Sequences are empty")
        for taxon, seq in zip(taxa, sequences):
            bad = set(seq) - set(ALPHABET)
            if bad:
                raise DataValidationError(
                    f"Sequence {taxon} contains non-ACGT characters", "".join(sorted(bad))
                )
        object.__setattr__(self, "taxa", taxa)
        object.__setattr__(self, "sequences", sequences)

    @property
    def n(self) -> int:
        return len(self.taxa)

    @property
    def L(self) -> int:
        return len(self.sequences[0])

    @cached_property
    def encoded(self) -> np.ndarray:
        """(N, L) array of base indices into ACGT."""
        raw = np.frombuffer("".join(self.sequences).encode("ascii"), dtype=np.uint8)
        return _CODE[raw].reshape(self.n, self.L)

    @classmethod
    def from_encoded(cls, taxa: Sequence[str], codes: np.ndarray) -> "Alignment":
        letters = np.frombuffer(ALPHABET.encode("ascii"), dtype=np.uint8)[codes]
        return cls(tuple(taxa), tuple(row.tobytes().decode("ascii") for row in letters))


@dataclass(frozen=True, eq=False)
class DiffRateMatrix:
    """Pairwise site-difference rates r_ij with the sequence length L."""

    labels: Tuple[str, ...]
    L: int
    rates: np.ndarray

    def __post_init__(self) -> None:
        rates = np.array(self.rates, dtype=float)
        n = len(self.labels)
        if rates.shape != (n, n):
            raise DataValidationError("Rate matrix shape does not match labels")
        if len(set(self.labels)) != n:
            raise DataValidationError("Labels must be unique")
        if self.L < 1:
            raise DomainError("Sequence length must be positive", f"L={self.L}")
        if not np.array_equal(rates, rates.T) or np.any(np.diag(rates) != 0.0):
            raise DataValidationError("Rates must be symmetric with a zero diagonal")
        if np.any(rates < 0.0) or np.any(rates > 1.0):
            raise DataValidationError("Rates must lie in [0, 1]")
        rates.flags.writeable = False
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "rates", rates)

    @property
    def n(self) -> int:
        return len(self.labels)

    def reindex(self, labels: Sequence[str]) -> "DiffRateMatrix":
        if sorted(labels) != sorted(self.labels):
            raise DomainError("Label sets differ")
        pos = {label: i for i, label in enumerate(self.labels)}
        idx = [pos[label] for label in labels]
        return DiffRateMatrix(tuple(labels), self.L, self.rates[np.ix_(idx, idx)])


def diff_rates(a: Alignment) -> DiffRateMatrix:
    """Fraction of sites at which each pair of sequences differs."""
    codes = a.encoded
    counts = np.zeros((a.n, a.n), dtype=np.int64)
    for i in range(a.n - 1):
        row = (codes[i] != codes[i + 1 :]).sum(axis=1)
        counts[i, i + 1 :] = row
        counts[i + 1 :, i] = row
    return DiffRateMatrix(a.taxa, a.L, counts / a.L)


def ml_distance_matrix(stats: DiffRateMatrix, cap: float = DEFAULT_DISTANCE_CAP) -> DistanceMatrix:
    """Independent maximum-likelihood JC distances for every pair of taxa.

    Saturated pairs (r >= 3/4) are set to ``cap`` and logged; identical
    sequences are logged as well since they collapse to distance 0.
    """
    d = np.asarray(ml_pairwise_distance(stats.rates, cap))
    np.fill_diagonal(d, 0.0)
    iu = np.triu_indices(stats.n, k=1)
    for i, j in zip(*iu):
        if stats.rates[i, j] >= 0.75:
            logger.warning(
                "Saturated pair (%s, %s): r=%.3f, distance capped at %g",
                stats.labels[i], stats.labels[j], stats.rates[i, j], cap,
            )
        elif stats.rates[i, j] == 0.0:
            logger.warning("Identical sequences for (%s, %s)", stats.labels[i], stats.labels[j])
    return DistanceMatrix(stats.labels, d)


def expected_diff_rates(tree: Tree, L: int = 1000) -> DiffRateMatrix:
    """Noiseless difference rates r_ij = 3 p_diff(t_ij) implied by a tree."""
    dm = leaf_distances(tree)
    rates = np.asarray(expected_diff_rate(dm.d))
    np.fill_diagonal(rates, 0.0)
    return DiffRateMatrix(dm.labels, L, rates)


def read_fasta(path: Union[str, Path]) -> Alignment:
    """Read an alignment; sequences may be wrapped over several lines.

    Raises:
        ParseError: If the file is empty or has sequence data before a header
        DataValidationError: On duplicate labels, unequal lengths or non-ACGT bases
    """
    taxa: List[str] = []
    chunks: List[List[str]] = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith(";"):
            continue
        if line.startswith(">"):
            taxa.append(line[1:].strip())
            chunks.append([])
        elif not chunks:
            raise ParseError("Sequence data before the first header", f"{path}:{lineno}")
        else:
            chunks[-1].append("".join(line.split()))
    if not taxa:
        raise ParseError("No sequences found", str(path))
    alignment = Alignment(tuple(taxa), tuple("".join(c) for c in chunks))
    logger.debug("Read %d sequences of length %d from %s", alignment.n, alignment.L, path)
    return alignment


def write_fasta(a: Alignment, path: Union[str, Path], width: int = 0) -> None:
    """Write an alignment, wrapping sequences at ``width`` characters (0 = no wrap)."""
    lines = []
    for taxon, seq in zip(a.taxa, a.sequences):
        lines.append(f">{taxon}")
        if width > 0:
            lines.extend(seq[k : k + width] for k in range(0, len(seq), width))
        else:
            lines.append(seq)
    Path(path).write_text("\n".join(lines) + "\n")
