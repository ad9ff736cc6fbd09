# src/indoor_training/core/mdp.py

from typing import Dict, FrozenSet, Iterator, List, Mapping, Sequence, Tuple

import numpy as np

from ..games.dynamics import transition_reward
from ..games.state import GameState
from ..models.base import Outcome, RewardSpec
from ..models.game import GameSpec
from ..utils.exceptions import InconsistentIndex

RowKey = Tuple[int, int]
Row = Tuple[np.ndarray, np.ndarray]

# absolute tolerance of every row-sum check
ROW_SUM_TOL = 1e-9


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class StateIndex:
    """
    Dense integer ids for an ordered list of game configurations.

    Id 0 is always the initial configuration when the index comes from
    enumeration.
    """

    def __init__(self, states: Sequence[GameState]):
        self.states: Tuple[GameState, ...] = tuple(states)
        self.id_of: Dict[GameState, int] = {s: i for i, s in enumerate(self.states)}
        if len(self.id_of) != len(self.states):
            raise InconsistentIndex(
                f"State index has {len(self.states) - len(self.id_of)} duplicate configuration(s)"
            )

    @property
    def count(self) -> int:
        return len(self.states)

    def __len__(self) -> int:
        return len(self.states)

    def __contains__(self, state: GameState) -> bool:
        return state in self.id_of

    def __getitem__(self, state_id: int) -> GameState:
        return self.states[state_id]

    def __eq__(self, other) -> bool:
        return isinstance(other, StateIndex) and self.states == other.states

    def __hash__(self) -> int:
        return hash(self.states)


class TransitionTable:
    """
    Sparse transition function: (state id, action id) -> successor distribution.

    Each row is a pair of read-only arrays (successor ids, probabilities).
    Rows are kept in insertion order. Construction does not check the
    row-stochastic invariants; ``validate_mdp`` reports violations.
    """

    def __init__(self, n_states: int, rows: Mapping[RowKey, Row]):
        self.n_states = n_states
        self._rows: Dict[RowKey, Row] = {}
        for key, (ids, probs) in rows.items():
            ids = _frozen(np.asarray(ids, dtype=np.int64).copy())
            probs = _frozen(np.asarray(probs, dtype=np.float64).copy())
            if ids.shape != probs.shape:
                raise ValueError(f"Row {key}: {ids.shape[0]} ids but {probs.shape[0]} probabilities")
            self._rows[(int(key[0]), int(key[1]))] = (ids, probs)

    @classmethod
    def from_lists(
        cls, n_states: int, rows: Mapping[RowKey, Sequence[Tuple[int, float]]]
    ) -> "TransitionTable":
        converted = {}
        for key, entries in rows.items():
            ids = [j for j, _ in entries]
            probs = [p for _, p in entries]
            converted[key] = (np.array(ids, dtype=np.int64), np.array(probs, dtype=np.float64))
        return cls(n_states, converted)

    def row(self, state: int, action: int) -> Row:
        return self._rows[(state, action)]

    def dense_row(self, state: int, action: int) -> np.ndarray:
        ids, probs = self.row(state, action)
        dense = np.zeros(self.n_states, dtype=np.float64)
        np.add.at(dense, ids, probs)
        return dense

    def keys(self) -> List[RowKey]:
        return list(self._rows)

    def items(self) -> Iterator[Tuple[RowKey, Row]]:
        return iter(self._rows.items())

    def __contains__(self, key: RowKey) -> bool:
        return key in self._rows

    def __len__(self) -> int:
        return len(self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TransitionTable):
            return NotImplemented
        if self.n_states != other.n_states or list(self._rows) != list(other._rows):
            return False
        return all(
            np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
            for a, b in zip(self._rows.values(), other._rows.values())
        )

    __hash__ = None

    def entry_count(self) -> int:
        return sum(ids.shape[0] for ids, _ in self._rows.values())


class Mdp:
    """
    Exact finite MDP of one game instance.

    Attributes:
        game: GameSpec the MDP was built from
        state_index: Enumerated configurations
        legal_actions: Legal action ids per state id (empty for terminal states)
        transitions: Sparse transition table
        outcomes: Terminal outcome per state id
        rewards: Reward constants applied per transition
        discount: Discount factor
        shared_index: True when the index was enumerated over several
            variants, so some states may be unreachable under ``game`` alone
    """

    def __init__(
        self,
        game: GameSpec,
        state_index: StateIndex,
        legal_actions: Sequence[Tuple[int, ...]],
        transitions: TransitionTable,
        outcomes: Sequence[Outcome],
        rewards: RewardSpec,
        discount: float,
        shared_index: bool = False,
    ):
        self.game = game
        self.state_index = state_index
        self.legal_actions: Tuple[Tuple[int, ...], ...] = tuple(tuple(a) for a in legal_actions)
        self.transitions = transitions
        self.outcomes: Tuple[Outcome, ...] = tuple(Outcome(o) for o in outcomes)
        self.rewards = rewards
        self.discount = discount
        self.shared_index = shared_index
        self.terminal_states: FrozenSet[int] = frozenset(
            i for i, o in enumerate(self.outcomes) if o is not Outcome.NON_TERMINAL
        )

    @property
    def n_states(self) -> int:
        return self.state_index.count

    @property
    def n_actions(self) -> int:
        return self.game.n_actions

    @property
    def initial_state(self) -> int:
        return 0

    def is_terminal(self, state: int) -> bool:
        return state in self.terminal_states

    def legal_pairs(self) -> List[RowKey]:
        """Every legal (state, action) pair in enumeration order."""
        return [(s, a) for s, actions in enumerate(self.legal_actions) for a in actions]

    def reward(self, state: int, next_state: int) -> float:
        return transition_reward(
            self.rewards,
            self.state_index[state],
            self.state_index[next_state],
            self.outcomes[next_state],
        )

    def with_transitions(self, transitions: TransitionTable) -> "Mdp":
        """Same MDP with another transition table over the same index."""
        return Mdp(
            self.game,
            self.state_index,
            self.legal_actions,
            transitions,
            self.outcomes,
            self.rewards,
            self.discount,
            self.shared_index,
        )
