# src/indoor_training/games/policies.py

from typing import Dict, List, NamedTuple, Tuple

from ..models.base import Cell, ElementPolicy, GameKind, PolicyKind
from ..models.game import GameSpec, Geometry
from ..utils.exceptions import NoLegalMove
from .state import GameState, paddle_moves, walk_moves


class ElementMove(NamedTuple):
    """One outcome of a stochastic element's move distribution."""
    label: str
    destination: Cell
    probability: float


def _manhattan(a: Cell, b: Cell) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def _uniform(moves: List[Tuple[str, Cell]]) -> List[ElementMove]:
    if not moves:
        return []
    prob = 1.0 / len(moves)
    return [ElementMove(label, dest, prob) for label, dest in moves]


def _directional(
    moves: List[Tuple[str, Cell]], cell: Cell, target: Cell, p: float
) -> List[ElementMove]:
    here = _manhattan(cell, target)
    toward = [m for m in moves if _manhattan(m[1], target) < here]
    others = [m for m in moves if _manhattan(m[1], target) >= here]
    if not toward or not others:
        # a single group takes all the mass
        return _uniform(moves)
    p_toward = p / len(toward)
    p_other = (1.0 - p) / len(others)
    return [
        ElementMove(label, dest, p_toward if (label, dest) in toward else p_other)
        for label, dest in moves
    ]


def teleport_targets(geo: Geometry, agent: Cell, near_walls: bool) -> List[Cell]:
    """Open cells a teleporting ghost may land on, excluding the agent's cell."""
    cells = geo.wall_adjacent if near_walls else geo.open_cells
    return [cell for cell in cells if cell != agent]


def _teleporting(
    moves: List[Tuple[str, Cell]], targets: List[Cell], p: float
) -> List[ElementMove]:
    if p == 0.0 or not targets:
        return _uniform(moves)
    if not moves:
        return [ElementMove(f"TELEPORT{t}", t, 1.0 / len(targets)) for t in targets]
    p_walk = (1.0 - p) / len(moves)
    p_jump = p / len(targets)
    out = [ElementMove(label, dest, p_walk) for label, dest in moves]
    out.extend(ElementMove(f"TELEPORT{t}", t, p_jump) for t in targets)
    return out


def _following(
    moves: List[Tuple[str, Cell]], cell: Cell, ball_col: int, p: float
) -> List[ElementMove]:
    if ball_col < cell[1]:
        wanted = 'LEFT'
    elif ball_col > cell[1]:
        wanted = 'RIGHT'
    else:
        wanted = 'STOP'
    if wanted not in {label for label, _ in moves}:
        wanted = 'STOP'
    base = (1.0 - p) / len(moves)
    mass: Dict[str, float] = {label: base for label, _ in moves}
    mass[wanted] += p
    return [ElementMove(label, dest, mass[label]) for label, dest in moves]


def element_move_distribution(
    policy: ElementPolicy, state: GameState, element: int, *, spec: GameSpec
) -> List[ElementMove]:
    """
    Move distribution of one stochastic element.

    ``state`` is the configuration after the agent's move, so directional
    ghosts chase the agent's new cell and teleports never land on it.
    Returned moves keep canonical order (walk moves Left, Right, Up, Down or
    paddle moves Left, Right, Stop, then teleport targets row-major).

    Raises:
        NoLegalMove: if the element has neither a legal move nor a teleport target
    """
    if not 0 <= element < len(state.elements):
        raise ValueError(f"Element {element} does not exist in state with "
                         f"{len(state.elements)} elements")
    geo = spec.layout.geometry
    cell = state.elements[element]
    kind = policy.kind

    if kind is PolicyKind.RANDOM_GHOST:
        dist = _uniform(walk_moves(geo, cell))
    elif kind is PolicyKind.DIRECTIONAL_GHOST:
        dist = _directional(walk_moves(geo, cell), cell, state.agent, policy.p)
    elif kind is PolicyKind.TELEPORTING_GHOST:
        targets = teleport_targets(geo, state.agent, policy.near_walls)
        dist = _teleporting(walk_moves(geo, cell), targets, policy.p)
    elif kind is PolicyKind.RANDOM_PADDLE:
        dist = _uniform(paddle_moves(geo, cell))
    else:
        if state.ball is None:
            raise ValueError("FollowingPaddle needs a ball in the state")
        dist = _following(paddle_moves(geo, cell), cell, state.ball[1], policy.p)

    if not dist:
        raise NoLegalMove(
            f"Element {element} at {cell} has no legal move in layout '{spec.layout.name}'"
        )
    return dist


def widest_policy(spec: GameSpec) -> ElementPolicy:
    """
    Policy whose support covers every policy applicable to the game's elements.
    """
    if spec.kind is GameKind.PACMAN:
        return ElementPolicy(kind=PolicyKind.TELEPORTING_GHOST, p=0.5)
    return ElementPolicy(kind=PolicyKind.RANDOM_PADDLE)
