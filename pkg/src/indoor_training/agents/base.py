# src/indoor_training/agents/base.py

from abc import ABC, abstractmethod
from typing import Optional, Tuple

import numpy as np

from ..core.environment import MdpEnvironment
from ..core.mdp import Mdp
from ..models.agent import AgentConfig
from ..models.base import Algorithm
from ..utils.exceptions import EnvironmentFault
from .qtable import QTable
from .updates import greedy_select, q_update, sarsa_update, select_action

DEFAULT_MAX_STEPS = 1000


class TabularAgent(ABC):
    """
    Abstract base class for tabular agents.
    Owns a QTable and the random stream driving its action choices.
    """

    # SARSA picks the next action before updating
    on_policy: bool = False

    def __init__(
        self,
        config: AgentConfig,
        q: QTable,
        rng: Optional[np.random.Generator] = None,
    ):
        self.config = config
        self.q = q
        self.rng = rng if rng is not None else np.random.default_rng(config.seed)

    @classmethod
    def for_mdp(
        cls, config: AgentConfig, mdp: Mdp, rng: Optional[np.random.Generator] = None
    ) -> "TabularAgent":
        return cls(config, QTable.for_mdp(mdp), rng)

    def act(self, state: int) -> int:
        """Training-time action."""
        return select_action(self.q, state, self.config, self.rng)

    def greedy_action(self, state: int) -> int:
        return greedy_select(self.q, state, self.rng)

    @abstractmethod
    def update(
        self, s: int, a: int, r: float, s_next: int, a_next: Optional[int] = None
    ) -> None:
        """Apply one learning update."""
        pass

    def _check_successor(self, state: int, action: int, nxt: int) -> None:
        if not 0 <= nxt < self.q.n_states:
            raise EnvironmentFault(
                f"Environment returned successor {nxt} of ({state}, {action}) "
                f"outside the {self.q.n_states}-state index"
            )

    def train_episode(
        self, env: MdpEnvironment, max_steps: int = DEFAULT_MAX_STEPS, episode: int = 0
    ) -> float:
        """
        Roll out one training episode with online updates; return its return.

        Every executed (state, action) pair is recorded as visited. Hitting
        ``max_steps`` ends the episode without zeroing the bootstrap.
        """
        state = env.reset(episode)
        if max_steps <= 0 or env.is_terminal(state):
            return 0.0
        total = 0.0
        action = self.act(state)
        for _ in range(max_steps):
            self.q.record_visit(state, action)
            nxt, reward, done = env.step(state, action)
            self._check_successor(state, action, nxt)
            total += reward
            if self.on_policy:
                nxt_action = None if done else self.act(nxt)
                self.update(state, action, reward, nxt, nxt_action)
            else:
                self.update(state, action, reward, nxt)
                nxt_action = None if done else self.act(nxt)
            if done:
                break
            state, action = nxt, nxt_action
        return total

    def evaluate(
        self,
        env: MdpEnvironment,
        episodes: int,
        max_steps: int = DEFAULT_MAX_STEPS,
        greedy: bool = True,
        episode_offset: int = 0,
    ) -> float:
        """
        Mean return of ``episodes`` rollouts without learning or visit recording.
        """
        if episodes < 1:
            raise ValueError(f"episodes must be >= 1, got {episodes}")
        returns = np.empty(episodes, dtype=np.float64)
        for k in range(episodes):
            state = env.reset(episode_offset + k)
            total = 0.0
            for _ in range(max_steps):
                if env.is_terminal(state):
                    break
                action = self.greedy_action(state) if greedy else self.act(state)
                nxt, reward, done = env.step(state, action)
                self._check_successor(state, action, nxt)
                total += reward
                state = nxt
                if done:
                    break
            returns[k] = total
        return float(returns.mean())


class QLearningAgent(TabularAgent):
    """Off-policy agent bootstrapping from the greedy value of the next state."""

    def update(self, s, a, r, s_next, a_next=None) -> None:
        q_update(self.q, s, a, r, s_next, self.config)


class SarsaAgent(TabularAgent):
    """On-policy agent bootstrapping from the next action actually chosen."""

    on_policy = True

    def update(self, s, a, r, s_next, a_next=None) -> None:
        sarsa_update(self.q, s, a, r, s_next, a_next, self.config)


def make_agent(
    config: AgentConfig, q: QTable, rng: Optional[np.random.Generator] = None
) -> TabularAgent:
    """Agent class matching ``config.algorithm``."""
    if config.algorithm is Algorithm.Q_LEARNING:
        return QLearningAgent(config, q, rng)
    return SarsaAgent(config, q, rng)


def run_training_episode(
    env: MdpEnvironment,
    q: QTable,
    cfg: AgentConfig,
    max_steps: int = DEFAULT_MAX_STEPS,
    *,
    rng: np.random.Generator,
    episode: int = 0,
) -> Tuple[QTable, float]:
    """
    One training episode of the configured algorithm; updates ``q`` in place.

    Raises:
        EnvironmentFault: if the environment returns a successor outside the index
    """
    agent = make_agent(cfg, q, rng)
    return q, agent.train_episode(env, max_steps, episode)


def evaluate(
    env: MdpEnvironment,
    q: QTable,
    episodes: int,
    rng: np.random.Generator,
    *,
    max_steps: int = DEFAULT_MAX_STEPS,
    greedy: bool = True,
    cfg: Optional[AgentConfig] = None,
    episode_offset: int = 0,
) -> float:
    """
    Mean return of test rollouts; greedy with uniform tie-breaking by default.
    """
    agent = make_agent(cfg or AgentConfig(), q, rng)
    return agent.evaluate(env, episodes, max_steps, greedy, episode_offset)
