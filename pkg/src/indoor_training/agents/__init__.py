from .base import (
    DEFAULT_MAX_STEPS,
    QLearningAgent,
    SarsaAgent,
    TabularAgent,
    evaluate,
    make_agent,
    run_training_episode,
)
from .qtable import QTable, pack_pairs, unpack_pairs
from .updates import (
    boltzmann_probs,
    boltzmann_select,
    epsilon_greedy_select,
    greedy_select,
    q_update,
    sarsa_update,
    select_action,
)

__all__ = [
    "DEFAULT_MAX_STEPS",
    "QLearningAgent",
    "QTable",
    "SarsaAgent",
    "TabularAgent",
    "boltzmann_probs",
    "boltzmann_select",
    "epsilon_greedy_select",
    "evaluate",
    "greedy_select",
    "make_agent",
    "pack_pairs",
    "q_update",
    "run_training_episode",
    "sarsa_update",
    "select_action",
    "unpack_pairs",
]
