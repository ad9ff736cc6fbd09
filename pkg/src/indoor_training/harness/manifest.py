# src/indoor_training/harness/manifest.py

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from ..games.layout import BUILTIN_LAYOUTS, builtin_game
from ..models.agent import AgentConfig
from ..models.base import ElementPolicy, GameKind, PolicyKind, RewardSpec
from ..models.config import Counting
from ..models.experiment import EnvironmentDescriptor, ExperimentSpec, ProtocolConfig
from ..models.game import GameSpec, base_policy
from ..models.noise import NOISE_PRESETS, NoiseSpec
from .specs import make_generalization_spec, make_learnability_spec

logger = logging.getLogger(__name__)

# Noise levels every target is evaluated at
PROTOCOL_STDS: Tuple[float, ...] = (
    NOISE_PRESETS['none'], NOISE_PRESETS['low'], NOISE_PRESETS['high'],
)
# Semantic variants are only run at the lower two levels when counting by table
SEMANTIC_STDS: Tuple[float, ...] = PROTOCOL_STDS[:2]

SEMANTIC_POLICIES: Dict[GameKind, Tuple[ElementPolicy, ...]] = {
    GameKind.PACMAN: (
        ElementPolicy(kind=PolicyKind.DIRECTIONAL_GHOST, p=0.3),
        ElementPolicy(kind=PolicyKind.DIRECTIONAL_GHOST, p=0.6),
        ElementPolicy(kind=PolicyKind.TELEPORTING_GHOST, p=0.5),
        ElementPolicy(kind=PolicyKind.TELEPORTING_GHOST, p=0.2),
    ),
    GameKind.PONG: (
        ElementPolicy(kind=PolicyKind.FOLLOWING_PADDLE, p=0.3),
        ElementPolicy(kind=PolicyKind.FOLLOWING_PADDLE, p=0.6),
    ),
    GameKind.BREAKOUT: (),
}

TargetPair = Tuple[ExperimentSpec, ExperimentSpec]


def builtin_layouts(kind: GameKind) -> Tuple[str, ...]:
    return tuple(name for name, k in BUILTIN_LAYOUTS.items() if k is kind)


def _semantic_stds(kind: GameKind, counting: Counting) -> Tuple[float, ...]:
    # Pong's following paddles appear at every noise level in the table
    if counting is Counting.ALL or kind is GameKind.PONG:
        return PROTOCOL_STDS
    return SEMANTIC_STDS


def protocol_targets(
    kind: GameKind,
    counting: Counting = Counting.TABLE,
    layouts: Optional[Sequence[str]] = None,
    *,
    rewards: Optional[RewardSpec] = None,
    discount: float = 0.9,
    noise: Optional[NoiseSpec] = None,
) -> List[EnvironmentDescriptor]:
    """
    Target environments of the evaluation protocol for one game.

    With ``Counting.TABLE`` PacMan yields 11 targets per grid (the unbiased
    ghost at three noise levels, four semantic ghosts at two), Pong 9 per
    grid and Breakout 3 per grid. ``Counting.ALL`` crosses every policy with
    every noise level.
    """
    noise = noise or NoiseSpec()
    names = tuple(layouts) if layouts is not None else builtin_layouts(kind)
    targets: List[EnvironmentDescriptor] = []
    for name in names:
        base = builtin_game(name, rewards=rewards, discount=discount)
        if base.kind is not kind:
            raise ValueError(f"Layout '{name}' is a {base.kind.value} layout, not {kind.value}")
        for std in PROTOCOL_STDS:
            targets.append(EnvironmentDescriptor(game=base, noise=noise.with_std(std)))
        for policy in SEMANTIC_POLICIES[kind]:
            game = base.with_policy(policy)
            for std in _semantic_stds(kind, counting):
                targets.append(EnvironmentDescriptor(game=game, noise=noise.with_std(std)))
    logger.debug(f"{len(targets)} {kind.value} protocol targets ({counting.value} counting)")
    return targets


def generalization_source(target: EnvironmentDescriptor) -> EnvironmentDescriptor:
    """Noise-free environment with the unbiased element policy on the target's board."""
    game: GameSpec = target.game
    policy = base_policy(game.kind)
    if policy is not None:
        game = game.with_policy(policy)
    return EnvironmentDescriptor(game=game, noise=target.noise.with_std(0.0))


def make_pair(
    target: EnvironmentDescriptor,
    agent: Optional[AgentConfig] = None,
    protocol: Optional[ProtocolConfig] = None,
    source: Optional[EnvironmentDescriptor] = None,
) -> TargetPair:
    """(Learnability, Generalization) specs sharing ``target`` as test environment."""
    source = source or generalization_source(target)
    return (
        make_learnability_spec(target, agent, protocol),
        make_generalization_spec(source, target, agent, protocol),
    )


def protocol_manifest(
    kind: GameKind,
    agent: Optional[AgentConfig] = None,
    protocol: Optional[ProtocolConfig] = None,
    counting: Counting = Counting.TABLE,
    layouts: Optional[Sequence[str]] = None,
    **target_kwargs,
) -> List[TargetPair]:
    """One (L, G) pair per protocol target."""
    return [
        make_pair(target, agent, protocol)
        for target in protocol_targets(kind, counting, layouts, **target_kwargs)
    ]
