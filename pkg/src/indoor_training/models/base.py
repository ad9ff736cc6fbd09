from __future__ import annotations

from enum import Enum, IntEnum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class LabModel(BaseModel):
    """
    Base class for every serializable model of the lab.

    Models are immutable and reject unknown keys, so a config or persisted
    document that carries a misspelled field fails loudly instead of being
    silently ignored. Subclasses inherit JSON round-tripping helpers used by
    the persistence layer and the CLI.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    def to_json(self) -> str:
        """
        Serialize to a canonical JSON document.
        """
        return self.model_dump_json()

    @classmethod
    def from_json(cls, payload: str):
        """
        Create a model from a JSON document.
        """
        return cls.model_validate_json(payload)


class GameKind(Enum):
    """
    The three grid games the lab can turn into exact MDPs.

    Values:
        PACMAN: agent eats pellets while stochastic ghosts roam the maze
        PONG: agent paddle against a stochastic computer paddle
        BREAKOUT: agent paddle breaks bricks, no stochastic elements
    """
    PACMAN = 'pacman'
    PONG = 'pong'
    BREAKOUT = 'breakout'


class PolicyKind(Enum):
    """
    Movement policy of a stochastic game element.

    Ghost kinds apply to PacMan, paddle kinds to Pong.
    """
    RANDOM_GHOST = 'RandomGhost'
    DIRECTIONAL_GHOST = 'DirectionalGhost'
    TELEPORTING_GHOST = 'TeleportingGhost'
    RANDOM_PADDLE = 'RandomPaddle'
    FOLLOWING_PADDLE = 'FollowingPaddle'

    @property
    def is_ghost(self) -> bool:
        return self in (
            PolicyKind.RANDOM_GHOST,
            PolicyKind.DIRECTIONAL_GHOST,
            PolicyKind.TELEPORTING_GHOST,
        )


class Algorithm(Enum):
    Q_LEARNING = 'q_learning'
    SARSA = 'sarsa'


class ExplorationKind(Enum):
    BOLTZMANN = 'boltzmann'
    EPSILON_GREEDY = 'epsilon_greedy'


class Outcome(IntEnum):
    """Terminal status of a game configuration."""
    NON_TERMINAL = 0
    WIN = 1
    LOSS = 2


class PacManAction(IntEnum):
    """Agent and ghost moves in PacMan, in canonical enumeration order."""
    LEFT = 0
    RIGHT = 1
    UP = 2
    DOWN = 3


class PaddleAction(IntEnum):
    """Paddle moves in Pong and Breakout, in canonical enumeration order."""
    LEFT = 0
    RIGHT = 1
    STOP = 2


# (row delta, column delta) per action name
ACTION_DELTAS = {
    'LEFT': (0, -1),
    'RIGHT': (0, 1),
    'UP': (-1, 0),
    'DOWN': (1, 0),
    'STOP': (0, 0),
}


class RewardSpec(LabModel):
    """
    Reward constants applied per transition.

    r(s, a, s') = step_penalty + food_reward * (items consumed entering s')
                  + win_reward * [s' is a win] + death_penalty * [s' is a loss]

    The default values follow the main-text PacMan description (+20 per
    pellet, -200 on death). The supplement describes +10 and -500 instead;
    both are available as presets and the discrepancy is left unresolved.

    Attributes:
        step_penalty: Reward per time step (must be negative)
        food_reward: Reward per consumed pellet or broken brick
        death_penalty: Reward when the episode ends in a loss (must be negative)
        win_reward: Reward when the episode ends in a win (must be positive)
    """
    step_penalty: float = Field(-1.0, lt=0.0, description='Reward units per time step.')
    food_reward: float = Field(
        20.0, ge=0.0, description='Reward units per pellet (PacMan) or per brick (Breakout).'
    )
    death_penalty: float = Field(-200.0, lt=0.0, description='Reward units on loss.')
    win_reward: float = Field(500.0, gt=0.0, description='Reward units on game completion.')

    @classmethod
    def main_text(cls) -> "RewardSpec":
        return cls(step_penalty=-1.0, food_reward=20.0, death_penalty=-200.0, win_reward=500.0)

    @classmethod
    def supplement(cls) -> "RewardSpec":
        return cls(step_penalty=-1.0, food_reward=10.0, death_penalty=-500.0, win_reward=500.0)

    @classmethod
    def pong(cls) -> "RewardSpec":
        return cls(step_penalty=-1.0, food_reward=0.0, death_penalty=-500.0, win_reward=500.0)

    @classmethod
    def preset(cls, name: str) -> "RewardSpec":
        presets = {
            'main_text': cls.main_text,
            'supplement': cls.supplement,
            'pong': cls.pong,
        }
        if name not in presets:
            raise ValueError(f"Unknown reward preset: {name}")
        return presets[name]()


class ElementPolicy(LabModel):
    """
    Movement policy of one stochastic game element.

    Attributes:
        kind: Which policy family governs the element
        p: Bias probability (toward-move, teleport or follow probability);
           ignored by the Random kinds
        near_walls: TeleportingGhost only; restrict teleport targets to
           open cells with at least one wall neighbour
    """
    kind: PolicyKind = Field(..., description='Policy family of the element.')
    p: float = Field(0.0, ge=0.0, le=1.0, description='Bias probability in [0, 1].')
    near_walls: bool = Field(
        False, description='Teleport only to wall-adjacent open cells (TeleportingGhost).'
    )

    @model_validator(mode='after')
    def _near_walls_only_for_teleport(self):
        if self.near_walls and self.kind is not PolicyKind.TELEPORTING_GHOST:
            raise ValueError('near_walls is only meaningful for TeleportingGhost')
        return self

    @property
    def label(self) -> str:
        if self.kind in (PolicyKind.RANDOM_GHOST, PolicyKind.RANDOM_PADDLE):
            return self.kind.value
        suffix = 'NearWalls' if self.near_walls else ''
        return f"{self.kind.value}{suffix}(p={self.p:g})"


Cell = Tuple[int, int]
