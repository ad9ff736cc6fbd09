from __future__ import annotations

import hashlib
from enum import Enum
from typing import Optional

from pydantic import Field, model_validator

from ..utils.exceptions import IncompatibleEnvironments
from .agent import AgentConfig
from .base import LabModel
from .game import GameSpec
from .noise import MAX_SEED, NoiseSpec


class ExperimentRole(Enum):
    """
    Which side of the indoor-training comparison a run belongs to.

    Values:
        LEARNABILITY: trained and tested on the target environment
        GENERALIZATION: trained on a source environment, tested zero-shot on the target
    """
    LEARNABILITY = 'learnability'
    GENERALIZATION = 'generalization'


class EnvironmentDescriptor(LabModel):
    """
    An environment an agent is trained or tested on.

    Semantic variants are expressed through the game's element policies,
    delta-environments through a non-zero noise std.

    Attributes:
        game: Game instance, including element policies
        noise: Transition noise applied on top of the game's exact MDP
    """
    game: GameSpec
    noise: NoiseSpec = Field(default_factory=NoiseSpec)

    @property
    def label(self) -> str:
        return f"{self.game.label}@std={self.noise.std:g}"


class ProtocolConfig(LabModel):
    """
    Population training and evaluation schedule.

    Attributes:
        n_agents: Population size
        n_episodes: Training episodes per agent
        eval_every: Training episodes between two evaluations
        eval_episodes: Test rollouts per evaluation
        max_steps: Step cap per episode
        base_seed: Root seed every agent stream is derived from
        greedy_evaluation: Evaluate greedily instead of with the exploration policy
        r_max: Reference return for regret; computed analytically when absent
    """
    n_agents: int = Field(500, ge=1, description='Agents per population.')
    n_episodes: int = Field(1000, ge=1, description='Training episodes per agent.')
    eval_every: int = Field(10, ge=1, description='Episodes between evaluations.')
    eval_episodes: int = Field(10, ge=1, description='Test rollouts per evaluation.')
    max_steps: int = Field(1000, ge=0, description='Step cap per episode.')
    base_seed: int = Field(0, ge=0, le=MAX_SEED, description='Root seed of the run.')
    greedy_evaluation: bool = Field(True, description='Greedy test rollouts.')
    r_max: Optional[float] = Field(None, description='Regret reference return override.')

    @model_validator(mode='after')
    def _check_schedule(self):
        if self.n_episodes % self.eval_every != 0:
            raise ValueError(
                f"eval_every ({self.eval_every}) must divide n_episodes ({self.n_episodes})"
            )
        return self

    @property
    def n_checkpoints(self) -> int:
        return self.n_episodes // self.eval_every

    @classmethod
    def full(cls, **kwargs) -> "ProtocolConfig":
        return cls(**{'n_agents': 500, 'n_episodes': 1000, **kwargs})

    @classmethod
    def desk(cls, **kwargs) -> "ProtocolConfig":
        return cls(**{'n_agents': 50, 'n_episodes': 300, **kwargs})


class ExperimentSpec(LabModel):
    """
    One population run: where agents train, where they are tested, and how.

    Attributes:
        role: Learnability or Generalization side of a comparison
        train_env: Environment the agents learn on
        test_env: Environment every evaluation runs on
        agent: Agent hyper-parameters
        protocol: Population schedule and seeds
    """
    role: ExperimentRole
    train_env: EnvironmentDescriptor
    test_env: EnvironmentDescriptor
    agent: AgentConfig = Field(default_factory=AgentConfig)
    protocol: ProtocolConfig = Field(default_factory=ProtocolConfig)

    @model_validator(mode='after')
    def _check_shared_board(self):
        if not self.train_env.game.same_board(self.test_env.game):
            raise IncompatibleEnvironments(
                f"Train environment {self.train_env.label} and test environment "
                f"{self.test_env.label} do not share a layout"
            )
        return self

    @property
    def fingerprint(self) -> str:
        """SHA-256 of the canonical JSON form."""
        return hashlib.sha256(self.to_json().encode('utf-8')).hexdigest()

    @property
    def label(self) -> str:
        return f"{self.role.value}:{self.train_env.label}->{self.test_env.label}"
