# tests/unit/models/fixtures.py

"""
Shared payloads and helpers for the lab's Pydantic model tests.
"""

from copy import deepcopy
from typing import Any, Dict


def make_reward_payload(**overrides) -> Dict[str, Any]:
    payload = {
        "step_penalty": -1.0,
        "food_reward": 20.0,
        "death_penalty": -200.0,
        "win_reward": 500.0,
    }
    payload.update(overrides)
    return payload


def make_layout_payload(**overrides) -> Dict[str, Any]:
    payload = {"name": "corridor", "rows": ["%%%%%", "%P .%", "%%%%%"]}
    payload.update(overrides)
    return payload


def make_game_payload(**overrides) -> Dict[str, Any]:
    payload = {
        "kind": "pacman",
        "layout": make_layout_payload(),
        "element_policies": [],
        "rewards": make_reward_payload(),
        "discount": 0.9,
    }
    payload.update(overrides)
    return payload


def make_protocol_payload(**overrides) -> Dict[str, Any]:
    payload = {
        "n_agents": 2,
        "n_episodes": 20,
        "eval_every": 10,
        "eval_episodes": 2,
        "max_steps": 50,
        "base_seed": 0,
    }
    payload.update(overrides)
    return payload


def make_spec_payload(**overrides) -> Dict[str, Any]:
    env = {"game": make_game_payload(), "noise": {"std": 0.0}}
    payload = {
        "role": "learnability",
        "train_env": deepcopy(env),
        "test_env": deepcopy(env),
        "agent": {},
        "protocol": make_protocol_payload(),
    }
    payload.update(overrides)
    return payload


def set_field(payload: Dict[str, Any], path: str, value: Any) -> Dict[str, Any]:
    """Copy of ``payload`` with the dotted ``path`` set to ``value``."""
    result = deepcopy(payload)
    *parents, leaf = path.split(".")
    node = result
    for key in parents:
        node = node[key]
    node[leaf] = value
    return result


def remove_field(payload: Dict[str, Any], path: str) -> Dict[str, Any]:
    result = deepcopy(payload)
    *parents, leaf = path.split(".")
    node = result
    for key in parents:
        node = node[key]
    del node[leaf]
    return result
