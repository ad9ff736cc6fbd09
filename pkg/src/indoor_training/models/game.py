from __future__ import annotations

from functools import lru_cache
from typing import Dict, FrozenSet, Optional, Tuple

from pydantic import Field, model_validator

from ..utils.exceptions import LayoutInvalid
from .base import Cell, ElementPolicy, GameKind, LabModel, PolicyKind, RewardSpec

WALL = '%'
ITEM = '.'
AGENT = 'P'
ELEMENT = 'G'
BALL = 'o'
EMPTY = ' '
LAYOUT_CHARS = frozenset({WALL, ITEM, AGENT, ELEMENT, BALL, EMPTY})

DEFAULT_BALL_VELOCITY = {
    GameKind.PONG: (1, 1),
    GameKind.BREAKOUT: (-1, 1),
}


class Geometry:
    """
    Parsed, read-only view of a layout grid used by the game dynamics.

    Cells are (row, column) pairs. Item cells (pellets or bricks) are numbered
    in row-major order; bit i of a configuration's item mask is set while
    item i is still present.
    """

    def __init__(self, rows: Tuple[str, ...]):
        self.height = len(rows)
        self.width = len(rows[0])
        walls, open_cells, items, elements = set(), [], [], []
        agent, ball = None, None
        for r, line in enumerate(rows):
            for c, ch in enumerate(line):
                cell = (r, c)
                if ch == WALL:
                    walls.add(cell)
                    continue
                open_cells.append(cell)
                if ch == ITEM:
                    items.append(cell)
                elif ch == AGENT:
                    agent = cell
                elif ch == ELEMENT:
                    elements.append(cell)
                elif ch == BALL:
                    ball = cell
        self.walls: FrozenSet[Cell] = frozenset(walls)
        self.open_cells: Tuple[Cell, ...] = tuple(open_cells)
        self.items: Tuple[Cell, ...] = tuple(items)
        self.item_bit: Dict[Cell, int] = {cell: 1 << i for i, cell in enumerate(items)}
        self.agent: Cell = agent
        self.elements: Tuple[Cell, ...] = tuple(elements)
        self.ball: Optional[Cell] = ball
        self.wall_adjacent: Tuple[Cell, ...] = tuple(
            cell for cell in open_cells
            if any(self.is_wall((cell[0] + dr, cell[1] + dc))
                   for dr, dc in ((0, -1), (0, 1), (-1, 0), (1, 0)))
        )

    @property
    def full_item_mask(self) -> int:
        return (1 << len(self.items)) - 1

    def is_wall(self, cell: Cell) -> bool:
        r, c = cell
        if r < 0 or c < 0 or r >= self.height or c >= self.width:
            return True
        return cell in self.walls


@lru_cache(maxsize=None)
def _geometry(rows: Tuple[str, ...]) -> Geometry:
    return Geometry(rows)


def check_layout_rows(rows: Tuple[str, ...], name: str = '<layout>') -> None:
    """
    Check the structural rules every layout must satisfy.

    Raises LayoutInvalid naming the layout and the first broken rule.
    """
    if len(rows) < 3:
        raise LayoutInvalid(f"Layout '{name}' needs at least 3 rows, got {len(rows)}")
    width = len(rows[0])
    if width < 3:
        raise LayoutInvalid(f"Layout '{name}' needs at least 3 columns, got {width}")
    for r, line in enumerate(rows):
        if len(line) != width:
            raise LayoutInvalid(
                f"Layout '{name}' is not rectangular: row {r} has {len(line)} cells, expected {width}"
            )
        bad = set(line) - LAYOUT_CHARS
        if bad:
            raise LayoutInvalid(f"Layout '{name}' row {r} has unknown characters {sorted(bad)}")
        border = line if r in (0, len(rows) - 1) else line[0] + line[-1]
        if set(border) != {WALL}:
            raise LayoutInvalid(f"Layout '{name}' border must be walls (row {r})")
    agents = sum(line.count(AGENT) for line in rows)
    if agents != 1:
        raise LayoutInvalid(f"Layout '{name}' must contain exactly one agent 'P', found {agents}")
    balls = sum(line.count(BALL) for line in rows)
    if balls > 1:
        raise LayoutInvalid(f"Layout '{name}' contains {balls} balls, at most one is allowed")


class LayoutSpec(LabModel):
    """
    ASCII layout of a grid game instance.

    One character per cell: '%' wall, '.' pellet/brick, 'P' agent,
    'G' stochastic element (ghost or computer paddle), 'o' ball, ' ' empty.
    The grid is rectangular and bordered by walls.

    Attributes:
        name: Layout identifier (built-in name or file stem)
        rows: Grid rows, top to bottom
    """
    name: str = Field(..., description='Layout identifier.', examples=['v2', 'p1', 'b3'])
    rows: Tuple[str, ...] = Field(..., description='Grid rows, top to bottom.')

    @model_validator(mode='after')
    def _check_rows(self):
        check_layout_rows(self.rows, self.name)
        return self

    @property
    def geometry(self) -> Geometry:
        return _geometry(self.rows)

    @property
    def text(self) -> str:
        return '\n'.join(self.rows)


class GameSpec(LabModel):
    """
    Declarative description of one game instance.

    A GameSpec fully determines the state index and transition table built by
    the core module. Two GameSpecs that differ only in element policies,
    rewards or discount describe variants of the same layout and can share a
    state index.

    Attributes:
        kind: Which game dynamics apply
        layout: The ASCII grid
        element_policies: One policy per 'G' cell, in row-major order
        rewards: Reward constants
        discount: Discount factor in (0, 1]
        ball_velocity: Initial (row, column) ball velocity for Pong/Breakout
    """
    kind: GameKind
    layout: LayoutSpec
    element_policies: Tuple[ElementPolicy, ...] = Field(
        (), description='Per stochastic element, in row-major element order.'
    )
    rewards: RewardSpec = Field(default_factory=RewardSpec)
    discount: float = Field(0.9, gt=0.0, le=1.0)
    ball_velocity: Optional[Tuple[int, int]] = Field(
        None, description='Initial ball velocity; defaults per game kind.'
    )

    @model_validator(mode='after')
    def _check_game(self):
        geo = self.layout.geometry
        name = self.layout.name
        if len(self.element_policies) != len(geo.elements):
            raise LayoutInvalid(
                f"Layout '{name}' has {len(geo.elements)} stochastic elements "
                f"but {len(self.element_policies)} policies were given"
            )
        if self.kind is GameKind.PACMAN:
            if not geo.items:
                raise LayoutInvalid(f"PacMan layout '{name}' needs at least one pellet")
            if geo.ball is not None:
                raise LayoutInvalid(f"PacMan layout '{name}' must not contain a ball")
            if any(not pol.kind.is_ghost for pol in self.element_policies):
                raise LayoutInvalid(f"PacMan layout '{name}' accepts ghost policies only")
        elif self.kind is GameKind.PONG:
            if geo.ball is None or len(geo.elements) != 1:
                raise LayoutInvalid(
                    f"Pong layout '{name}' needs exactly one ball and two paddles"
                )
            if geo.items:
                raise LayoutInvalid(f"Pong layout '{name}' must not contain pellets")
            if any(pol.kind.is_ghost for pol in self.element_policies):
                raise LayoutInvalid(f"Pong layout '{name}' accepts paddle policies only")
            top, bottom = sorted((geo.elements[0][0], geo.agent[0]))
            if top == bottom or not top < geo.ball[0] < bottom:
                raise LayoutInvalid(
                    f"Pong layout '{name}' needs the ball strictly between the paddle rows"
                )
        else:
            if geo.elements:
                raise LayoutInvalid(f"Breakout layout '{name}' has no stochastic elements")
            if geo.ball is None or not geo.items:
                raise LayoutInvalid(
                    f"Breakout layout '{name}' needs at least one brick, one ball and one paddle"
                )
            if geo.ball[0] >= geo.agent[0] or any(r >= geo.agent[0] for r, _ in geo.items):
                raise LayoutInvalid(
                    f"Breakout layout '{name}' needs ball and bricks above the paddle row"
                )
        if self.kind is not GameKind.PACMAN:
            vr, vc = self.initial_ball_velocity
            if vr not in (-1, 1) or vc not in (-1, 0, 1):
                raise LayoutInvalid(
                    f"Ball velocity {self.initial_ball_velocity} must have row component "
                    f"in {{-1, 1}} and column component in {{-1, 0, 1}}"
                )
        return self

    @property
    def initial_ball_velocity(self) -> Tuple[int, int]:
        if self.ball_velocity is not None:
            return tuple(self.ball_velocity)
        return DEFAULT_BALL_VELOCITY.get(self.kind, (0, 0))

    @property
    def n_actions(self) -> int:
        return 4 if self.kind is GameKind.PACMAN else 3

    def with_policy(self, policy: ElementPolicy) -> "GameSpec":
        """
        Return a variant where every stochastic element follows ``policy``.
        """
        policies = tuple(policy for _ in self.layout.geometry.elements)
        return GameSpec(
            kind=self.kind,
            layout=self.layout,
            element_policies=policies,
            rewards=self.rewards,
            discount=self.discount,
            ball_velocity=self.ball_velocity,
        )

    def same_board(self, other: "GameSpec") -> bool:
        """True if both specs describe the same game kind, grid and ball start."""
        return (
            self.kind is other.kind
            and self.layout.rows == other.layout.rows
            and self.initial_ball_velocity == other.initial_ball_velocity
        )

    @property
    def label(self) -> str:
        policies = sorted({pol.label for pol in self.element_policies})
        return f"{self.kind.value}-{self.layout.name}" + (f"-{'+'.join(policies)}" if policies else '')


def base_policy(kind: GameKind) -> Optional[ElementPolicy]:
    """The unbiased element policy each game is trained on by default."""
    if kind is GameKind.PACMAN:
        return ElementPolicy(kind=PolicyKind.RANDOM_GHOST)
    if kind is GameKind.PONG:
        return ElementPolicy(kind=PolicyKind.RANDOM_PADDLE)
    return None
