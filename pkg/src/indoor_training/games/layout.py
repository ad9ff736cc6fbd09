# src/indoor_training/games/layout.py

import logging
from pathlib import Path
from typing import Optional, Tuple, Union

from ..models.base import ElementPolicy, GameKind, RewardSpec
from ..models.game import GameSpec, LayoutSpec, base_policy
from ..utils.exceptions import LayoutInvalid

logger = logging.getLogger(__name__)

LAYOUT_DIR = Path(__file__).parent / "layouts"

# Built-in grids are small reconstructions of the depicted game variants.
BUILTIN_LAYOUTS = {
    "v2": GameKind.PACMAN,
    "v3": GameKind.PACMAN,
    "v4": GameKind.PACMAN,
    "p1": GameKind.PONG,
    "p2": GameKind.PONG,
    "b1": GameKind.BREAKOUT,
    "b2": GameKind.BREAKOUT,
    "b3": GameKind.BREAKOUT,
}


def parse_layout(text: str, name: str = "<layout>") -> LayoutSpec:
    """
    Parse layout text (one character per cell) into a LayoutSpec.

    Trailing blank lines are ignored; spaces inside rows are cells.
    """
    rows = tuple(line.rstrip("\r") for line in text.rstrip("\n").split("\n"))
    return LayoutSpec(name=name, rows=rows)


def load_layout(name_or_path: Union[str, Path]) -> LayoutSpec:
    """
    Load a built-in layout by name (``v2``, ``p1``, ...) or a custom one by path.
    """
    key = str(name_or_path)
    if key in BUILTIN_LAYOUTS:
        path = LAYOUT_DIR / f"{key}.lay"
        name = key
    else:
        path = Path(name_or_path)
        name = path.stem
    if not path.exists():
        raise LayoutInvalid(f"Layout '{key}' not found at {path}")
    logger.debug(f"Loading layout '{name}' from {path}")
    return parse_layout(path.read_text(encoding="utf-8"), name)


def default_rewards(kind: GameKind) -> RewardSpec:
    if kind is GameKind.PACMAN:
        return RewardSpec.main_text()
    if kind is GameKind.PONG:
        return RewardSpec.pong()
    # bricks pay like the supplement's pellets
    return RewardSpec.supplement()


def make_game(
    kind: GameKind,
    layout: LayoutSpec,
    policy: Optional[ElementPolicy] = None,
    rewards: Optional[RewardSpec] = None,
    discount: float = 0.9,
    ball_velocity: Optional[Tuple[int, int]] = None,
) -> GameSpec:
    """
    Build a GameSpec where every stochastic element follows ``policy``.

    Without a policy the game's unbiased element policy is used.
    """
    policy = policy or base_policy(kind)
    n_elements = len(layout.geometry.elements)
    policies = tuple(policy for _ in range(n_elements)) if policy else ()
    return GameSpec(
        kind=kind,
        layout=layout,
        element_policies=policies,
        rewards=rewards or default_rewards(kind),
        discount=discount,
        ball_velocity=ball_velocity,
    )


def builtin_game(
    name: str,
    policy: Optional[ElementPolicy] = None,
    rewards: Optional[RewardSpec] = None,
    discount: float = 0.9,
) -> GameSpec:
    """
    GameSpec for one of the shipped layouts.
    """
    if name not in BUILTIN_LAYOUTS:
        raise LayoutInvalid(
            f"Unknown built-in layout '{name}'; expected one of {sorted(BUILTIN_LAYOUTS)}"
        )
    return make_game(BUILTIN_LAYOUTS[name], load_layout(name), policy, rewards, discount)
