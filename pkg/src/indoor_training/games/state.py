# src/indoor_training/games/state.py

from typing import List, NamedTuple, Optional, Tuple

from ..models.base import ACTION_DELTAS, Cell, GameKind, PacManAction, PaddleAction
from ..models.game import Geometry, GameSpec

# (row, column, row velocity, column velocity)
Ball = Tuple[int, int, int, int]


class GameState(NamedTuple):
    """
    Canonical game configuration.

    Tuples order and hash deterministically, so a GameState can key the
    state index directly. Ghost direction is not part of the state: every
    supported element policy is memoryless.

    Attributes:
        agent: Agent cell (PacMan or the player's paddle)
        elements: Stochastic element cells in row-major layout order
        items: Bitmask of remaining pellets/bricks (bit i = item i present)
        ball: Ball position and velocity; None for PacMan
    """
    agent: Cell
    elements: Tuple[Cell, ...]
    items: int
    ball: Optional[Ball] = None

    def to_list(self) -> list:
        """JSON-friendly form used by the MDP export."""
        return [
            list(self.agent),
            [list(cell) for cell in self.elements],
            self.items,
            list(self.ball) if self.ball is not None else None,
        ]

    @classmethod
    def from_list(cls, data: list) -> "GameState":
        agent, elements, items, ball = data
        return cls(
            agent=tuple(agent),
            elements=tuple(tuple(cell) for cell in elements),
            items=int(items),
            ball=tuple(ball) if ball is not None else None,
        )


def initial_state(spec: GameSpec) -> GameState:
    geo = spec.layout.geometry
    ball = None
    if geo.ball is not None:
        vr, vc = spec.initial_ball_velocity
        ball = (geo.ball[0], geo.ball[1], vr, vc)
    return GameState(geo.agent, geo.elements, geo.full_item_mask, ball)


def action_names(kind: GameKind) -> Tuple[str, ...]:
    """Action names indexed by action id."""
    if kind is GameKind.PACMAN:
        return tuple(a.name for a in PacManAction)
    return tuple(a.name for a in PaddleAction)


def shift(cell: Cell, name: str) -> Cell:
    dr, dc = ACTION_DELTAS[name]
    return (cell[0] + dr, cell[1] + dc)


def walk_moves(geo: Geometry, cell: Cell) -> List[Tuple[str, Cell]]:
    """Non-wall single-cell moves in Left, Right, Up, Down order."""
    moves = []
    for action in PacManAction:
        dest = shift(cell, action.name)
        if not geo.is_wall(dest):
            moves.append((action.name, dest))
    return moves


def paddle_moves(geo: Geometry, cell: Cell) -> List[Tuple[str, Cell]]:
    """Horizontal paddle moves in Left, Right, Stop order; Stop is always legal."""
    moves = []
    for action in (PaddleAction.LEFT, PaddleAction.RIGHT):
        dest = shift(cell, action.name)
        if not geo.is_wall(dest):
            moves.append((action.name, dest))
    moves.append((PaddleAction.STOP.name, cell))
    return moves
