from __future__ import annotations

from pydantic import Field

from .base import Algorithm, ExplorationKind, LabModel
from .noise import MAX_SEED


class AgentConfig(LabModel):
    """
    Hyper-parameters of a tabular agent.

    Defaults follow the reported training parameters (temperature 1.5,
    learning rate 0.05, discount 0.9). The epsilon value is not reported
    anywhere and defaults to a constant 0.1.

    Attributes:
        algorithm: Update rule, Q-learning or SARSA
        exploration: Action-selection rule used while training
        epsilon: Random-action probability for epsilon-greedy
        temperature: Boltzmann temperature
        alpha: Learning rate
        discount: Discount factor of the update target
        seed: Seed of the agent's policy stream when run stand-alone
    """
    algorithm: Algorithm = Field(Algorithm.SARSA, description='Tabular update rule.')
    exploration: ExplorationKind = Field(
        ExplorationKind.EPSILON_GREEDY, description='Training action selection.'
    )
    epsilon: float = Field(0.1, ge=0.0, le=1.0, description='Epsilon-greedy random-action rate.')
    temperature: float = Field(1.5, gt=0.0, description='Boltzmann temperature.')
    alpha: float = Field(0.05, gt=0.0, le=1.0, description='Learning rate.')
    discount: float = Field(0.9, gt=0.0, le=1.0, description='Discount factor.')
    seed: int = Field(0, ge=0, le=MAX_SEED, description='Agent RNG seed.')
