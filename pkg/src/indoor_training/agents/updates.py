# src/indoor_training/agents/updates.py

from typing import Optional

import numpy as np
from scipy.special import softmax

from ..models.agent import AgentConfig
from ..models.base import ExplorationKind
from .qtable import QTable


def q_update(
    q: QTable, s: int, a: int, r: float, s_next: int, cfg: AgentConfig
) -> QTable:
    """
    Off-policy update: Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)).

    Raises:
        IllegalAction: if ``a`` is not legal in ``s``
    """
    q.check_legal(s, a)
    target = r + cfg.discount * q.max_value(s_next)
    q.values[s, a] += cfg.alpha * (target - q.values[s, a])
    return q


def sarsa_update(
    q: QTable,
    s: int,
    a: int,
    r: float,
    s_next: int,
    a_next: Optional[int],
    cfg: AgentConfig,
) -> QTable:
    """
    On-policy update: Q(s,a) += alpha * (r + gamma * Q(s',a') - Q(s,a)).

    ``a_next`` is ignored (and may be None) when ``s_next`` is terminal.

    Raises:
        IllegalAction: if ``a`` is not legal in ``s`` or ``a_next`` in ``s_next``
    """
    q.check_legal(s, a)
    if q.terminal[s_next]:
        bootstrap = 0.0
    else:
        q.check_legal(s_next, a_next)
        bootstrap = q.values[s_next, a_next]
    target = r + cfg.discount * bootstrap
    q.values[s, a] += cfg.alpha * (target - q.values[s, a])
    return q


def boltzmann_probs(q: QTable, s: int, temperature: float) -> np.ndarray:
    """
    Softmax of Q(s, .) / temperature over the legal actions of ``s``.

    Entries follow ``q.legal_actions(s)``. scipy's softmax shifts by the
    maximum, so large values do not overflow.
    """
    actions = list(q.legal_actions(s))
    return softmax(q.values[s, actions] / temperature)


def boltzmann_select(q: QTable, s: int, temperature: float, rng: np.random.Generator) -> int:
    actions = q.legal_actions(s)
    probs = boltzmann_probs(q, s, temperature)
    return int(actions[rng.choice(len(actions), p=probs)])


def greedy_select(q: QTable, s: int, rng: np.random.Generator) -> int:
    """Greedy action, ties broken uniformly at random."""
    best = q.greedy_actions(s)
    if best.shape[0] == 1:
        return int(best[0])
    return int(best[rng.integers(best.shape[0])])


def epsilon_greedy_select(q: QTable, s: int, epsilon: float, rng: np.random.Generator) -> int:
    """
    Uniform legal action with probability ``epsilon``, otherwise greedy.
    """
    if epsilon > 0.0 and rng.random() < epsilon:
        actions = q.legal_actions(s)
        return int(actions[rng.integers(len(actions))])
    return greedy_select(q, s, rng)


def select_action(q: QTable, s: int, cfg: AgentConfig, rng: np.random.Generator) -> int:
    """Training-time action selection configured by ``cfg.exploration``."""
    if cfg.exploration is ExplorationKind.BOLTZMANN:
        return boltzmann_select(q, s, cfg.temperature, rng)
    return epsilon_greedy_select(q, s, cfg.epsilon, rng)
