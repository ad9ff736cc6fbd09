# src/indoor_training/harness/seeding.py

from enum import IntEnum

import numpy as np


class StreamRole(IntEnum):
    """Independent random streams of one agent run."""
    TRAIN_ENV = 0
    AGENT_POLICY = 1
    EVAL_ENV = 2


# sub-keys below a role: transition sampling vs noise draws
_SAMPLING = 0
_NOISE = 1


def _sequence(base_seed: int, agent_index: int, role: StreamRole, sub: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=base_seed, spawn_key=(agent_index, int(role), sub))


def agent_seed(base_seed: int, agent_index: int) -> int:
    """Reported seed of agent ``agent_index``: a hash of (base_seed, agent_index)."""
    seq = np.random.SeedSequence(entropy=base_seed, spawn_key=(agent_index,))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def stream_rng(base_seed: int, agent_index: int, role: StreamRole) -> np.random.Generator:
    """Generator of one stream; depends only on (base_seed, agent_index, role)."""
    return np.random.default_rng(_sequence(base_seed, agent_index, role, _SAMPLING))


def noise_stream_seed(base_seed: int, agent_index: int, role: StreamRole) -> int:
    """Seed keying the per-episode noise draws of an environment stream."""
    seq = _sequence(base_seed, agent_index, role, _NOISE)
    return int(seq.generate_state(1, dtype=np.uint64)[0])
