# src/indoor_training/noise/environment.py

from typing import Optional, Tuple

import numpy as np

from ..core.environment import MdpEnvironment
from ..core.mdp import Mdp, TransitionTable
from ..models.noise import NoiseSpec
from ..utils.seeding import derive_seed
from .delta import DeltaEnvironment, inject_noise, resample


class NoisyEnvironment(MdpEnvironment):
    """
    Simulator of a delta-environment.

    With ``resample_per_episode`` every ``reset`` draws a fresh perturbed
    table keyed by (noise seed, stream seed, episode); otherwise one frozen
    table keyed by the noise seed is used throughout.
    """

    def __init__(
        self,
        mdp: Mdp,
        noise: NoiseSpec,
        rng: Optional[np.random.Generator] = None,
        stream_seed: int = 0,
    ):
        super().__init__(mdp, rng)
        self.noise = noise
        self.stream_seed = stream_seed
        self._root = inject_noise(mdp, noise)
        self.delta: DeltaEnvironment = self._root

    @property
    def transitions(self) -> TransitionTable:
        return self.delta.perturbed

    def reset(self, episode: int = 0) -> int:
        if self.noise.resample_per_episode and not self.noise.is_noiseless:
            self.delta = resample(self._root, derive_seed(self.stream_seed, episode))
        return super().reset(episode)

    def row(self, state: int, action: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.delta.row(state, action)


def make_environment(
    mdp: Mdp,
    noise: Optional[NoiseSpec] = None,
    rng: Optional[np.random.Generator] = None,
    stream_seed: int = 0,
) -> MdpEnvironment:
    """Exact simulator when there is no noise, delta-environment simulator otherwise."""
    if noise is None or noise.is_noiseless:
        return MdpEnvironment(mdp, rng)
    return NoisyEnvironment(mdp, noise, rng, stream_seed)
