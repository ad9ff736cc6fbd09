# src/indoor_training/agents/qtable.py

from typing import FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from ..core.mdp import Mdp
from ..utils.exceptions import IllegalAction


class QTable:
    """
    Tabular action-value estimates plus the set of visited (state, action) pairs.

    Values start at 0. Illegal pairs keep value 0 and are never selected;
    terminal states bootstrap to 0.

    Attributes:
        values: (n_states, n_actions) array of estimates
        legal: (n_states, n_actions) legality mask
        terminal: (n_states,) terminal-state mask
        visited: (n_states, n_actions) mask of pairs executed in training
    """

    def __init__(
        self,
        n_states: int,
        n_actions: int,
        legal_actions: Sequence[Tuple[int, ...]],
        terminal_states: Iterable[int] = (),
    ):
        self.values = np.zeros((n_states, n_actions), dtype=np.float64)
        self.legal = np.zeros((n_states, n_actions), dtype=bool)
        for s, actions in enumerate(legal_actions):
            self.legal[s, list(actions)] = True
        self.terminal = np.zeros(n_states, dtype=bool)
        self.terminal[list(terminal_states)] = True
        self.visited = np.zeros((n_states, n_actions), dtype=bool)
        self._legal_actions = tuple(tuple(a) for a in legal_actions)

    @classmethod
    def for_mdp(cls, mdp: Mdp) -> "QTable":
        return cls(mdp.n_states, mdp.n_actions, mdp.legal_actions, mdp.terminal_states)

    @property
    def n_states(self) -> int:
        return self.values.shape[0]

    @property
    def n_actions(self) -> int:
        return self.values.shape[1]

    def legal_actions(self, state: int) -> Tuple[int, ...]:
        return self._legal_actions[state]

    def check_legal(self, state: int, action: int) -> None:
        if action is None or not (0 <= state < self.n_states and 0 <= action < self.n_actions
                                  and self.legal[state, action]):
            raise IllegalAction(f"Action {action} is not legal in state {state}")

    def max_value(self, state: int) -> float:
        """max_a Q(state, a) over legal actions; 0 for terminal states."""
        if self.terminal[state] or not self._legal_actions[state]:
            return 0.0
        return float(self.values[state, list(self._legal_actions[state])].max())

    def greedy_actions(self, state: int) -> np.ndarray:
        """Every legal action attaining the maximum value."""
        actions = np.asarray(self._legal_actions[state], dtype=np.int64)
        vals = self.values[state, actions]
        return actions[vals == vals.max()]

    def record_visit(self, state: int, action: int) -> None:
        self.visited[state, action] = True

    def visited_pairs(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((int(s), int(a)) for s, a in zip(*np.nonzero(self.visited)))

    def legal_pairs(self) -> List[Tuple[int, int]]:
        return [(s, a) for s, actions in enumerate(self._legal_actions) for a in actions]

    def visited_bitset(self) -> bytes:
        """Visited flags of the legal pairs, in enumeration order, packed 8 per byte."""
        flags = np.array([self.visited[s, a] for s, a in self.legal_pairs()], dtype=bool)
        return np.packbits(flags).tobytes()

    def copy(self) -> "QTable":
        clone = QTable.__new__(QTable)
        clone.values = self.values.copy()
        clone.legal = self.legal.copy()
        clone.terminal = self.terminal.copy()
        clone.visited = self.visited.copy()
        clone._legal_actions = self._legal_actions
        return clone


def pack_pairs(pairs: Iterable[Tuple[int, int]], legal_pairs: Sequence[Tuple[int, int]]) -> bytes:
    """Bitset of ``pairs`` keyed by the order of ``legal_pairs``."""
    members = set(pairs)
    flags = np.array([pair in members for pair in legal_pairs], dtype=bool)
    return np.packbits(flags).tobytes()


def unpack_pairs(bits: bytes, legal_pairs: Sequence[Tuple[int, int]]) -> FrozenSet[Tuple[int, int]]:
    """Inverse of ``pack_pairs``."""
    flags = np.unpackbits(np.frombuffer(bits, dtype=np.uint8), count=len(legal_pairs)).astype(bool)
    return frozenset(pair for pair, flag in zip(legal_pairs, flags) if flag)
