"""hyptree: phylogenetic inference by gradient ascent on the hyperboloid."""

__version__ = "0.1.0"

from hyptree.embedder import EmbeddingConfigIn, embed_tree  # noqa: E402
from hyptree.optimizer import OptimizationResult, PointConfiguration, optimize  # noqa: E402
from hyptree.pipeline import InferenceResult, infer_tree, nj_baseline  # noqa: E402

__all__ = [
    "EmbeddingConfigIn",
    "InferenceResult",
    "OptimizationResult",
    "PointConfiguration",
    "embed_tree",
    "infer_tree",
    "nj_baseline",
    "optimize",
]
