from __future__ import annotations

from enum import Enum
from typing import Optional, Tuple

from pydantic import Field, model_validator

from .agent import AgentConfig
from .base import ElementPolicy, GameKind, LabModel, RewardSpec
from .experiment import ProtocolConfig
from .noise import MAX_SEED


class GameSection(LabModel):
    """
    ``game`` section of a config file.

    Attributes:
        kind: Game dynamics
        reward_preset: Named reward constants ('main_text', 'supplement', 'pong')
        rewards: Explicit reward constants; exclusive with reward_preset
        discount: MDP discount factor
        ball_velocity: Initial ball velocity override (Pong/Breakout)
    """
    kind: GameKind
    reward_preset: Optional[str] = Field(None, description='Named reward constants.')
    rewards: Optional[RewardSpec] = Field(None, description='Explicit reward constants.')
    discount: float = Field(0.9, gt=0.0, le=1.0)
    ball_velocity: Optional[Tuple[int, int]] = None

    @model_validator(mode='after')
    def _one_reward_source(self):
        if self.reward_preset is not None and self.rewards is not None:
            raise ValueError('give either reward_preset or rewards, not both')
        return self

    def resolved_rewards(self) -> Optional[RewardSpec]:
        if self.reward_preset is not None:
            return RewardSpec.preset(self.reward_preset)
        return self.rewards


class LayoutSection(LabModel):
    """``layout`` section: a built-in layout name or a path to a layout file."""
    name: Optional[str] = Field(None, description='Built-in layout name.', examples=['v2'])
    path: Optional[str] = Field(None, description='Path to a custom layout file.')

    @model_validator(mode='after')
    def _exactly_one(self):
        if (self.name is None) == (self.path is None):
            raise ValueError('layout needs exactly one of name or path')
        return self

    @property
    def source(self) -> str:
        return self.name if self.name is not None else self.path


class EnvSection(LabModel):
    """``train_env``/``test_env`` section: element policy and noise level."""
    policy: Optional[ElementPolicy] = Field(
        None, description="Element policy; the game's unbiased policy when absent."
    )
    noise_std: float = Field(0.0, ge=0.0, description='Transition noise std.')


class NoiseSection(LabModel):
    """``noise`` section: shared noise-stream settings (the std lives on each env)."""
    seed: int = Field(0, ge=0, le=MAX_SEED)
    resample_per_episode: bool = True
    dense_support_cap: int = Field(20_000, ge=1)
    sparse_sample_k: int = Field(64, ge=1)


class ExperimentConfig(LabModel):
    """A ``run`` config: one population run."""
    game: GameSection
    layout: LayoutSection
    train_env: EnvSection = Field(default_factory=EnvSection)
    test_env: EnvSection = Field(default_factory=EnvSection)
    agent: AgentConfig = Field(default_factory=AgentConfig)
    protocol: ProtocolConfig = Field(default_factory=ProtocolConfig)
    noise: NoiseSection = Field(default_factory=NoiseSection)


class Counting(Enum):
    """
    How protocol targets are counted.

    Values:
        TABLE: unbiased policy at every noise level, semantic variants at the
            lower two levels only
        ALL: every policy at every noise level
    """
    TABLE = 'table'
    ALL = 'all'


class PairSection(LabModel):
    """One (Learnability, Generalization) pair of a suite config."""
    layout: LayoutSection
    target: EnvSection
    source: EnvSection = Field(
        default_factory=EnvSection, description='Generalization training environment.'
    )


class ManifestSection(LabModel):
    """Generate the pairs from the protocol targets of the game's built-in layouts."""
    counting: Counting = Counting.TABLE
    layouts: Optional[Tuple[str, ...]] = Field(
        None, description="Built-in layouts to include; all of the game's when absent."
    )


class AcceptanceSection(LabModel):
    """
    Pass criterion of a suite: at least one pair where Generalization
    matched or beat Learnability with a Welch p below ``alpha``.
    """
    alpha: float = Field(0.05, gt=0.0, lt=1.0, description="Significance level of the pair test.")


class SuiteConfig(LabModel):
    """A ``suite`` config: explicit pairs and/or a generated manifest."""
    game: GameSection
    agent: AgentConfig = Field(default_factory=AgentConfig)
    protocol: ProtocolConfig = Field(default_factory=ProtocolConfig)
    noise: NoiseSection = Field(default_factory=NoiseSection)
    pairs: Tuple[PairSection, ...] = ()
    manifest: Optional[ManifestSection] = None
    acceptance: Optional[AcceptanceSection] = None
