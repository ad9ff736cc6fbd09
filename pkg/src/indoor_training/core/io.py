# src/indoor_training/core/io.py

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import pydantic

from ..games.state import GameState
from ..models.base import RewardSpec
from ..models.game import GameSpec
from ..utils.exceptions import ValidationError
from ..validation.validator import SchemaValidator
from .mdp import Mdp, StateIndex, TransitionTable

logger = logging.getLogger(__name__)

MDP_FORMAT = "indoor-training-mdp"
MDP_FORMAT_VERSION = 1


def mdp_to_document(mdp: Mdp) -> Dict[str, Any]:
    """
    JSON-ready export of an MDP.

    Rows appear in table order with successors in row order, so two MDPs
    with bit-identical tables export to identical documents.
    """
    return {
        "format": MDP_FORMAT,
        "version": MDP_FORMAT_VERSION,
        "game": mdp.game.model_dump(mode="json"),
        "shared_index": mdp.shared_index,
        "n_states": mdp.n_states,
        "states": [s.to_list() for s in mdp.state_index.states],
        "outcomes": [int(o) for o in mdp.outcomes],
        "legal_actions": [list(a) for a in mdp.legal_actions],
        "terminal_states": sorted(mdp.terminal_states),
        "rewards": mdp.rewards.model_dump(mode="json"),
        "discount": mdp.discount,
        "rows": [
            [s, a, [[int(j), float(p)] for j, p in zip(ids, probs)]]
            for (s, a), (ids, probs) in mdp.transitions.items()
        ],
    }


def dumps_mdp(mdp: Mdp) -> str:
    return json.dumps(mdp_to_document(mdp), separators=(",", ":")) + "\n"


def write_mdp(mdp: Mdp, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_mdp(mdp), encoding="utf-8")
    logger.info(f"Wrote MDP export ({mdp.n_states} states) to {path}")
    return path


def mdp_from_document(
    document: Union[str, Dict[str, Any]], validator: Optional[SchemaValidator] = None
) -> Mdp:
    """
    Rebuild an MDP from an export after schema validation.

    Raises:
        ValidationError: if the document fails the schema or the game model
    """
    validator = validator or SchemaValidator()
    data = validator.validate("mdp", document)
    try:
        game = GameSpec.model_validate(data["game"])
        rewards = RewardSpec.model_validate(data["rewards"])
    except pydantic.ValidationError as e:
        raise ValidationError(f"Invalid game in MDP export: {e}")
    states = [GameState.from_list(s) for s in data["states"]]
    if len(states) != data["n_states"]:
        raise ValidationError(
            f"MDP export declares {data['n_states']} states but lists {len(states)}"
        )
    rows = {(s, a): [(j, p) for j, p in entries] for s, a, entries in data["rows"]}
    return Mdp(
        game=game,
        state_index=StateIndex(states),
        legal_actions=[tuple(a) for a in data["legal_actions"]],
        transitions=TransitionTable.from_lists(len(states), rows),
        outcomes=data["outcomes"],
        rewards=rewards,
        discount=data["discount"],
        shared_index=data["shared_index"],
    )


def read_mdp(path: Union[str, Path], validator: Optional[SchemaValidator] = None) -> Mdp:
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"MDP export not found: {path}")
    logger.debug(f"Reading MDP export from {path}")
    return mdp_from_document(path.read_text(encoding="utf-8"), validator)
