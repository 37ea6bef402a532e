"""Seed derivation so that replicated work is independent of scheduling."""

from typing import Sequence

import numpy as np


def derive_seed(master: int, *keys: int) -> int:
    """Derive an independent 32-bit seed from a master seed and integer keys.

    Args:
        master: Master seed of the run
        keys: Identifiers of the unit of work (grid value, tree id, replicate...)

    Returns:
        A seed that depends only on (master, keys)
    """
    # the key count keeps (m, g, t) and (m, g, t, 0) apart
    entropy: Sequence[int] = [int(master) & 0xFFFFFFFF, len(keys), *(int(k) for k in keys)]
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


def make_rng(seed: int) -> np.random.Generator:
    """Create a private generator for a single call."""
    return np.random.default_rng(seed)
