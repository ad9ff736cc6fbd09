# src/indoor_training/core/builder.py

import logging
from collections import deque
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..games.dynamics import is_terminal, legal_actions, successor_configurations
from ..games.policies import widest_policy
from ..games.state import GameState, initial_state
from ..models.game import GameSpec
from ..utils.exceptions import IncompatibleEnvironments, InconsistentIndex, StateSpaceOverflow
from .mdp import Mdp, Row, RowKey, StateIndex, TransitionTable

logger = logging.getLogger(__name__)

DEFAULT_STATE_CAP = 5_000_000


def support_specs(
    game: GameSpec,
    variants: Optional[Sequence[GameSpec]] = None,
    family_support: bool = False,
) -> List[GameSpec]:
    """
    Games whose successor supports are merged during enumeration.

    ``family_support`` adds the variant whose element policy covers every
    policy applicable to the game, so all semantic and noise variants of a
    layout enumerate to one shared index.
    """
    specs = [game]
    if family_support and game.element_policies:
        # widest first: ids then do not depend on which family member is built
        specs.insert(0, game.with_policy(widest_policy(game)))
    for variant in variants or ():
        if not game.same_board(variant):
            raise IncompatibleEnvironments(
                f"Variant {variant.label} does not share the board of {game.label}"
            )
        specs.append(variant)
    return specs


def enumerate_states(
    game: GameSpec,
    *,
    variants: Optional[Sequence[GameSpec]] = None,
    family_support: bool = False,
    cap: int = DEFAULT_STATE_CAP,
) -> StateIndex:
    """
    Breadth-first enumeration of every configuration reachable from the start.

    Children are visited in canonical agent-action order, then in the order
    ``successor_configurations`` lists element moves, so ids are identical
    across runs. Terminal configurations are included but not expanded.

    Raises:
        StateSpaceOverflow: if more than ``cap`` configurations are reachable
    """
    specs = support_specs(game, variants, family_support)
    start = initial_state(game)
    states: List[GameState] = [start]
    id_of: Dict[GameState, int] = {start: 0}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for action in legal_actions(game, state):
            for spec in specs:
                for nxt, _ in successor_configurations(spec, state, action):
                    if nxt in id_of:
                        continue
                    if len(states) >= cap:
                        raise StateSpaceOverflow(
                            f"Enumeration of {game.label} exceeded the cap of {cap} states"
                        )
                    id_of[nxt] = len(states)
                    states.append(nxt)
                    queue.append(nxt)
    logger.debug(f"Enumerated {len(states)} states for {game.label} over {len(specs)} support(s)")
    return StateIndex(states)


def build_transition_table(game: GameSpec, index: StateIndex) -> TransitionTable:
    """
    Exact sparse transition table of ``game`` over ``index``.

    Each row lists successors in the order ``successor_configurations``
    produces them; element-move combinations reaching the same configuration
    are already merged there.

    Raises:
        InconsistentIndex: if a successor is missing from ``index``
    """
    rows: Dict[RowKey, Row] = {}
    for state_id, state in enumerate(index.states):
        for action in legal_actions(game, state):
            succ = successor_configurations(game, state, action)
            ids = np.empty(len(succ), dtype=np.int64)
            probs = np.empty(len(succ), dtype=np.float64)
            for k, (nxt, prob) in enumerate(succ):
                nxt_id = index.id_of.get(nxt)
                if nxt_id is None:
                    raise InconsistentIndex(
                        f"Successor {tuple(nxt)} of state {state_id} under action {action} "
                        f"is not in the state index"
                    )
                ids[k] = nxt_id
                probs[k] = prob
            rows[(state_id, action)] = (ids, probs)
    return TransitionTable(index.count, rows)


def build_mdp(
    game: GameSpec,
    *,
    variants: Optional[Sequence[GameSpec]] = None,
    family_support: bool = False,
    index: Optional[StateIndex] = None,
    cap: int = DEFAULT_STATE_CAP,
) -> Mdp:
    """
    Enumerate (unless ``index`` is given) and build the exact MDP of ``game``.
    """
    shared = bool(variants) or family_support or index is not None
    if index is None:
        index = enumerate_states(game, variants=variants, family_support=family_support, cap=cap)
    table = build_transition_table(game, index)
    mdp = Mdp(
        game=game,
        state_index=index,
        legal_actions=[legal_actions(game, s) for s in index.states],
        transitions=table,
        outcomes=[is_terminal(game, s) for s in index.states],
        rewards=game.rewards,
        discount=game.discount,
        shared_index=shared,
    )
    logger.info(
        f"Built MDP for {game.label}: {mdp.n_states} states, {len(table)} rows, "
        f"{table.entry_count()} entries"
    )
    return mdp
