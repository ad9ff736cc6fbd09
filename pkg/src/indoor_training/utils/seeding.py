# src/indoor_training/utils/seeding.py

import numpy as np


def derive_seed(*keys: int) -> int:
    """
    Hash integer keys into one 64-bit seed.

    Built on ``numpy.random.SeedSequence`` so the result is platform
    independent and different key tuples give independent streams.
    """
    seq = np.random.SeedSequence([int(k) for k in keys])
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def row_rng(seed: int, state: int, action: int) -> np.random.Generator:
    """Generator keyed by (seed, state, action)."""
    return np.random.default_rng([int(seed), int(state), int(action)])
