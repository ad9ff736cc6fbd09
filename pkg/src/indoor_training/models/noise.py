from __future__ import annotations

from pydantic import Field

from .base import LabModel

MAX_SEED = 2**64 - 1


class NoiseSpec(LabModel):
    """
    Gaussian transition-noise parameters of a delta-environment.

    Attributes:
        std: Standard deviation of the noise drawn per candidate successor
        seed: Base seed of the noise stream
        resample_per_episode: Draw a fresh perturbed table before every episode
        dense_support_cap: Largest state count for which noise is drawn over
            every state of the index; larger MDPs use sparse candidate sampling
        sparse_sample_k: Non-legal candidates sampled per row in sparse mode
    """
    std: float = Field(0.0, ge=0.0, description='Standard deviation of delta.')
    seed: int = Field(0, ge=0, le=MAX_SEED, description='Base seed of the noise stream.')
    resample_per_episode: bool = Field(
        True, description='Redraw the perturbed table before each game.'
    )
    dense_support_cap: int = Field(
        20_000, ge=1, description='State count above which sparse candidate sampling is used.'
    )
    sparse_sample_k: int = Field(
        64, ge=1, description='Sampled non-legal candidates per row in sparse mode.'
    )

    @property
    def is_noiseless(self) -> bool:
        return self.std == 0.0

    def with_std(self, std: float) -> "NoiseSpec":
        return self.model_copy(update={'std': std})

    @classmethod
    def preset(cls, name: str, **kwargs) -> "NoiseSpec":
        if name not in NOISE_PRESETS:
            raise ValueError(f"Unknown noise preset: {name}")
        return cls(std=NOISE_PRESETS[name], **kwargs)


# protocol noise levels plus the perturbation-bound extremes
NOISE_PRESETS = {
    'none': 0.0,
    'low': 0.1,
    'high': 0.5,
    'max': 1.0,
}

NO_NOISE = NoiseSpec(std=0.0)
LOW_NOISE = NoiseSpec(std=0.1)
HIGH_NOISE = NoiseSpec(std=0.5)
MAX_NOISE = NoiseSpec(std=1.0)
