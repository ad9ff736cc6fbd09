"""
Shared builders for games, MDPs, specs and run results used across the unit tests.

The corridor is the smallest PacMan board: the agent walks right twice to
eat the only pellet. It enumerates to three states and trains in
microseconds, so harness tests use it wherever the game itself is not
under test.
"""

import json
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from indoor_training.core.builder import build_mdp
from indoor_training.core.mdp import Mdp, TransitionTable
from indoor_training.games.layout import make_game, parse_layout
from indoor_training.models.agent import AgentConfig
from indoor_training.models.base import ElementPolicy, GameKind, PolicyKind
from indoor_training.models.experiment import (
    EnvironmentDescriptor,
    ExperimentSpec,
    ProtocolConfig,
)
from indoor_training.models.game import GameSpec
from indoor_training.models.noise import NoiseSpec
from indoor_training.models.results import AgentFinal, CurvePoint, RunResult
from indoor_training.harness.specs import make_generalization_spec, make_learnability_spec


# =============================================================================
# Layouts
# =============================================================================

CORRIDOR = "%%%%%\n%P .%\n%%%%%\n"

# ghost at (2, 2) with three walk moves; used by the directional-ghost tests
OPEN_ROOM = "%%%%%%\n%P  .%\n%  G %\n%%%%%%\n"

# seven open cells in one row, ghost in the middle
LONG_HALL = "%%%%%%%%%\n%P  G  .%\n%%%%%%%%%\n"


def make_corridor_game() -> GameSpec:
    return make_game(GameKind.PACMAN, parse_layout(CORRIDOR, "corridor"))


def make_open_room_game(policy: Optional[ElementPolicy] = None) -> GameSpec:
    return make_game(GameKind.PACMAN, parse_layout(OPEN_ROOM, "room"), policy)


def make_long_hall_game(policy: Optional[ElementPolicy] = None) -> GameSpec:
    return make_game(GameKind.PACMAN, parse_layout(LONG_HALL, "hall"), policy)


def directional(p: float) -> ElementPolicy:
    return ElementPolicy(kind=PolicyKind.DIRECTIONAL_GHOST, p=p)


def teleporting(p: float, near_walls: bool = False) -> ElementPolicy:
    return ElementPolicy(kind=PolicyKind.TELEPORTING_GHOST, p=p, near_walls=near_walls)


# =============================================================================
# MDPs
# =============================================================================

def make_corridor_mdp() -> Mdp:
    return build_mdp(make_corridor_game())


def corridor_with_rows(rows: Dict[Tuple[int, int], Sequence[Tuple[int, float]]]) -> Mdp:
    """The corridor MDP with its transition rows replaced."""
    mdp = make_corridor_mdp()
    return mdp.with_transitions(TransitionTable.from_lists(mdp.n_states, rows))


def single_row_table(n_states: int, entries: Sequence[Tuple[int, float]]) -> TransitionTable:
    return TransitionTable.from_lists(n_states, {(0, 0): list(entries)})


# =============================================================================
# Specs
# =============================================================================

def make_protocol(**overrides) -> ProtocolConfig:
    """A tiny schedule: 3 agents, 20 episodes, evaluation every 10."""
    values = {
        "n_agents": 3,
        "n_episodes": 20,
        "eval_every": 10,
        "eval_episodes": 2,
        "max_steps": 50,
        "base_seed": 7,
    }
    values.update(overrides)
    return ProtocolConfig(**values)


def make_env(game: Optional[GameSpec] = None, std: float = 0.0, seed: int = 0) -> EnvironmentDescriptor:
    return EnvironmentDescriptor(
        game=game or make_corridor_game(),
        noise=NoiseSpec(std=std, seed=seed),
    )


def make_corridor_spec(**protocol_overrides) -> ExperimentSpec:
    return make_learnability_spec(
        make_env(),
        AgentConfig(epsilon=0.2),
        make_protocol(**protocol_overrides),
    )


def make_corridor_pair(std: float = 0.0) -> Tuple[ExperimentSpec, ExperimentSpec]:
    target = make_env(std=std)
    protocol = make_protocol()
    return (
        make_learnability_spec(target, protocol=protocol),
        make_generalization_spec(make_env(), target, protocol=protocol),
    )


# =============================================================================
# Results
# =============================================================================

def make_run_result(
    spec: ExperimentSpec,
    final_mean: float,
    finals: Sequence[float],
    visited: Iterable[Tuple[int, int]] = (),
    universe_size: int = 20,
    curve_values: Optional[List[float]] = None,
) -> RunResult:
    """
    Synthetic RunResult; the curve ends at ``final_mean`` and is flat unless
    ``curve_values`` is given.
    """
    values = curve_values if curve_values is not None else [final_mean]
    every = spec.protocol.eval_every
    curve = tuple(
        CurvePoint(episode=(k + 1) * every, mean_return=v, std_return=0.0, n_agents=len(finals))
        for k, v in enumerate(values)
    )
    per_agent = tuple(
        AgentFinal(agent_index=i, seed=i, final_return=f) for i, f in enumerate(finals)
    )
    return RunResult(
        spec=spec,
        curve=curve,
        per_agent_final=per_agent,
        visited_union=frozenset(visited),
        universe_size=universe_size,
        fingerprint=spec.fingerprint,
    )


def pairs_of(*states: int) -> List[Tuple[int, int]]:
    """(state, 0) pairs; enough for exploration-overlap arithmetic."""
    return [(s, 0) for s in states]


# =============================================================================
# Config payloads
# =============================================================================

def make_experiment_payload(layout_path: str, **sections) -> Dict:
    """Minimal ``run`` config on a custom layout file, tiny protocol."""
    payload = {
        "game": {"kind": "pacman"},
        "layout": {"path": layout_path},
        "train_env": {"noise_std": 0.0},
        "test_env": {"noise_std": 0.0},
        "agent": {"algorithm": "sarsa", "epsilon": 0.2},
        "protocol": {
            "n_agents": 2,
            "n_episodes": 20,
            "eval_every": 10,
            "eval_episodes": 2,
            "max_steps": 50,
            "base_seed": 1,
        },
        "noise": {"seed": 0},
    }
    payload.update(sections)
    return payload


def make_suite_payload(layout_path: str, **sections) -> Dict:
    payload = {
        "game": {"kind": "pacman"},
        "agent": {"epsilon": 0.2},
        "protocol": {
            "n_agents": 2,
            "n_episodes": 20,
            "eval_every": 10,
            "eval_episodes": 2,
            "max_steps": 50,
        },
        "pairs": [
            {"layout": {"path": layout_path}, "target": {"noise_std": 0.1}},
            {"layout": {"path": layout_path}, "target": {"noise_std": 0.5}},
        ],
    }
    payload.update(sections)
    return payload


def write_json(path, payload: Dict) -> str:
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def write_corridor(tmp_path) -> str:
    path = tmp_path / "corridor.lay"
    path.write_text(CORRIDOR, encoding="utf-8")
    return str(path)
