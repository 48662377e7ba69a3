"""
Seed derivation on top of numpy's counter-based Philox generator.

A replication r draws from make_rng(base_seed, stream, r), so its random
numbers depend only on (base_seed, stream, r) and never on thread scheduling.
"""

import numpy as np


UINT64_MASK = (1 << 64) - 1


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    """Return a Philox generator keyed by the seed and any number of int keys."""
    entropy = [int(seed) & UINT64_MASK, *(int(k) & UINT64_MASK for k in keys)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def derive_seed(seed: int, *keys: int) -> int:
    """Hash (seed, keys) into a fresh 64-bit unsigned seed."""
    entropy = [int(seed) & UINT64_MASK, *(int(k) & UINT64_MASK for k in keys)]
    state = np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)
    return int(state[0])


def sklearn_seed(seed: int) -> int:
    """scikit-learn only accepts 32-bit random_state values."""
    return int(seed) % (1 << 32)
