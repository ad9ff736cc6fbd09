from .dynamics import (
    advance_ball,
    is_terminal,
    legal_actions,
    min_steps_to_win,
    successor_configurations,
    transition_reward,
)
from .layout import BUILTIN_LAYOUTS, builtin_game, default_rewards, load_layout, make_game, parse_layout
from .policies import ElementMove, element_move_distribution, teleport_targets, widest_policy
from .state import GameState, action_names, initial_state

__all__ = [
    "BUILTIN_LAYOUTS",
    "ElementMove",
    "GameState",
    "action_names",
    "advance_ball",
    "builtin_game",
    "default_rewards",
    "element_move_distribution",
    "initial_state",
    "is_terminal",
    "legal_actions",
    "load_layout",
    "make_game",
    "min_steps_to_win",
    "parse_layout",
    "successor_configurations",
    "teleport_targets",
    "transition_reward",
    "widest_policy",
]
