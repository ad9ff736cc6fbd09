# src/indoor_training/core/environment.py

from typing import Optional, Tuple

import numpy as np

from ..utils.exceptions import IllegalAction
from .mdp import Mdp, TransitionTable


def sample_successor(ids: np.ndarray, probs: np.ndarray, rng: np.random.Generator) -> int:
    """Draw one successor id by inverse-CDF sampling of a sparse row."""
    cdf = np.cumsum(probs)
    k = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    return int(ids[min(k, ids.shape[0] - 1)])


class MdpEnvironment:
    """
    Episodic simulator of an exact MDP.

    The environment owns its random stream; give every worker its own
    instance. Subclasses change the table the next step is sampled from.
    """

    def __init__(self, mdp: Mdp, rng: Optional[np.random.Generator] = None):
        self.mdp = mdp
        self.rng = rng if rng is not None else np.random.default_rng()
        self.episode = 0

    @property
    def transitions(self) -> TransitionTable:
        return self.mdp.transitions

    @property
    def n_states(self) -> int:
        return self.mdp.n_states

    @property
    def n_actions(self) -> int:
        return self.mdp.n_actions

    def reset(self, episode: int = 0) -> int:
        """Start an episode and return the initial state id."""
        self.episode = episode
        return self.mdp.initial_state

    def legal_actions(self, state: int) -> Tuple[int, ...]:
        return self.mdp.legal_actions[state]

    def is_terminal(self, state: int) -> bool:
        return self.mdp.is_terminal(state)

    def row(self, state: int, action: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.transitions.row(state, action)

    def step(self, state: int, action: int) -> Tuple[int, float, bool]:
        """
        Sample (next state, reward, terminal?) for one agent action.

        Raises:
            IllegalAction: if ``action`` is not legal in ``state``
        """
        if action not in self.mdp.legal_actions[state]:
            raise IllegalAction(f"Action {action} is not legal in state {state}")
        ids, probs = self.row(state, action)
        nxt = sample_successor(ids, probs, self.rng)
        if not 0 <= nxt < self.mdp.n_states:
            # out-of-index successors are reported by the rollout
            return nxt, 0.0, True
        return nxt, self.mdp.reward(state, nxt), self.mdp.is_terminal(nxt)
