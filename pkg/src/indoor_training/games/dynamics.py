# src/indoor_training/games/dynamics.py

import itertools
import math
from collections import deque
from typing import Callable, Dict, List, Optional, Tuple

from ..models.base import Cell, GameKind, Outcome, PacManAction, PaddleAction, RewardSpec
from ..models.game import GameSpec, Geometry
from ..utils.exceptions import IllegalAction, LayoutInvalid
from .policies import element_move_distribution
from .state import Ball, GameState, action_names, initial_state, shift


def legal_actions(spec: GameSpec, state: GameState) -> Tuple[int, ...]:
    """
    Legal agent action ids in canonical order; empty for terminal states.
    """
    if is_terminal(spec, state) is not Outcome.NON_TERMINAL:
        return ()
    geo = spec.layout.geometry
    if spec.kind is GameKind.PACMAN:
        return tuple(
            int(a) for a in PacManAction if not geo.is_wall(shift(state.agent, a.name))
        )
    return tuple(
        int(a) for a in PaddleAction
        if a is PaddleAction.STOP or not geo.is_wall(shift(state.agent, a.name))
    )


def is_terminal(spec: GameSpec, state: GameState) -> Outcome:
    """
    Classify a configuration as Win, Loss or NonTerminal.

    PacMan: a ghost on the agent's cell is a loss, no pellets left is a win.
    Pong: the ball in the agent's row is a loss, in the opponent's row a win.
    Breakout: the ball in the agent's row is a loss, no bricks left is a win.
    """
    if spec.kind is GameKind.PACMAN:
        if state.agent in state.elements:
            return Outcome.LOSS
        if state.items == 0:
            return Outcome.WIN
        return Outcome.NON_TERMINAL
    ball_row = state.ball[0]
    if ball_row == state.agent[0]:
        return Outcome.LOSS
    if spec.kind is GameKind.PONG:
        if ball_row == opponent_row(spec):
            return Outcome.WIN
    elif state.items == 0:
        return Outcome.WIN
    return Outcome.NON_TERMINAL


def opponent_row(spec: GameSpec) -> int:
    # paddles only move horizontally, so the layout row is fixed
    return spec.layout.geometry.elements[0][0]


def advance_ball(
    geo: Geometry,
    ball: Ball,
    agent: Cell,
    items: int,
    *,
    opponent: Optional[Cell] = None,
    opponent_row: Optional[int] = None,
    stop_when_cleared: bool = False,
) -> Tuple[Ball, int]:
    """
    Advance the ball one tick and return (ball, remaining item mask).

    The ball moves horizontally, then vertically. A wall or brick ahead
    reflects the matching velocity component (the brick is removed) and the
    ball keeps its cell on that axis. Paddles reflect the vertical component;
    a paddle row without a paddle under the ball lets it through, which ends
    the game. With ``stop_when_cleared`` the tick ends as soon as the last
    brick breaks.
    """
    r, c, vr, vc = ball
    if vc != 0:
        side = (r, c + vc)
        bit = geo.item_bit.get(side, 0) & items
        if bit or geo.is_wall(side):
            items &= ~bit
            vc = -vc
        else:
            c += vc
        if stop_when_cleared and bit and items == 0:
            return (r, c, vr, vc), items

    ahead = (r + vr, c)
    bit = geo.item_bit.get(ahead, 0) & items
    if bit or geo.is_wall(ahead):
        items &= ~bit
        vr = -vr
    elif ahead[0] == agent[0]:
        if ahead == agent:
            vr = -vr
        else:
            r += vr
    elif opponent_row is not None and ahead[0] == opponent_row:
        if ahead == opponent:
            vr = -vr
        else:
            r += vr
    else:
        r += vr
    return (r, c, vr, vc), items


def _combine_element_moves(
    spec: GameSpec,
    moved: GameState,
    finish: Optional[Callable[[GameState], GameState]] = None,
) -> List[Tuple[GameState, float]]:
    dists = [
        element_move_distribution(policy, moved, i, spec=spec)
        for i, policy in enumerate(spec.element_policies)
    ]
    merged: Dict[GameState, float] = {}
    for combo in itertools.product(*dists):
        prob = math.prod(move.probability for move in combo)
        if prob == 0.0:
            continue
        nxt = moved._replace(elements=tuple(move.destination for move in combo))
        if finish is not None:
            nxt = finish(nxt)
        merged[nxt] = merged.get(nxt, 0.0) + prob
    return list(merged.items())


def successor_configurations(
    spec: GameSpec, state: GameState, agent_action: int
) -> List[Tuple[GameState, float]]:
    """
    Every successor of ``state`` under ``agent_action`` with its probability.

    The agent moves first. In PacMan, stepping onto a ghost ends the game
    before anything else happens (this also covers agent and ghost swapping
    cells), and eating the last pellet ends it before the ghosts move.
    Otherwise every stochastic element moves independently and the ball, if
    any, advances last. Element-move combinations that lead to the same
    configuration are merged, in first-seen order.

    Raises:
        IllegalAction: if the action is not legal in ``state``
    """
    legal = legal_actions(spec, state)
    if agent_action not in legal:
        raise IllegalAction(
            f"Action {agent_action} is not legal in state {tuple(state)} (legal: {legal})"
        )
    geo = spec.layout.geometry
    dest = shift(state.agent, action_names(spec.kind)[agent_action])

    if spec.kind is GameKind.PACMAN:
        if dest in state.elements:
            return [(state._replace(agent=dest), 1.0)]
        items = state.items & ~geo.item_bit.get(dest, 0)
        moved = state._replace(agent=dest, items=items)
        if items == 0:
            return [(moved, 1.0)]
        return _combine_element_moves(spec, moved)

    if spec.kind is GameKind.BREAKOUT:
        ball, items = advance_ball(
            geo, state.ball, dest, state.items, stop_when_cleared=True
        )
        return [(GameState(dest, state.elements, items, ball), 1.0)]

    row = opponent_row(spec)

    def _ball_tick(nxt: GameState) -> GameState:
        ball, items = advance_ball(
            geo, nxt.ball, nxt.agent, nxt.items, opponent=nxt.elements[0], opponent_row=row
        )
        return nxt._replace(ball=ball, items=items)

    return _combine_element_moves(spec, state._replace(agent=dest), _ball_tick)


def transition_reward(
    rewards: RewardSpec, state: GameState, next_state: GameState, outcome: Outcome
) -> float:
    """r(s, a, s') from the items consumed entering s' and its outcome."""
    eaten = (state.items & ~next_state.items).bit_count()
    value = rewards.step_penalty + rewards.food_reward * eaten
    if outcome is Outcome.WIN:
        value += rewards.win_reward
    elif outcome is Outcome.LOSS:
        value += rewards.death_penalty
    return value


def min_steps_to_win(spec: GameSpec) -> int:
    """
    Fewest agent moves that win the game when stochastic elements are ignored.

    Ghosts never move or collide and the Pong opponent paddle is absent, so
    the search runs over the deterministic agent/item/ball graph.

    Raises:
        LayoutInvalid: if no winning line exists
    """
    geo = spec.layout.geometry
    names = action_names(spec.kind)
    opp_row = opponent_row(spec) if spec.kind is GameKind.PONG else None
    start = initial_state(spec)._replace(elements=())

    def _won(s: GameState) -> bool:
        if spec.kind is GameKind.PONG:
            return s.ball[0] == opp_row
        if spec.kind is GameKind.BREAKOUT and s.ball[0] == s.agent[0]:
            return False
        return s.items == 0

    def _lost(s: GameState) -> bool:
        return s.ball is not None and s.ball[0] == s.agent[0]

    if _won(start):
        return 0
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        state, depth = queue.popleft()
        for name in names:
            dest = shift(state.agent, name)
            if geo.is_wall(dest):
                continue
            if spec.kind is GameKind.PACMAN:
                nxt = state._replace(agent=dest, items=state.items & ~geo.item_bit.get(dest, 0))
            else:
                ball, items = advance_ball(
                    geo, state.ball, dest, state.items,
                    opponent_row=opp_row,
                    stop_when_cleared=spec.kind is GameKind.BREAKOUT,
                )
                nxt = GameState(dest, (), items, ball)
            if nxt in seen:
                continue
            if _won(nxt):
                return depth + 1
            if _lost(nxt):
                continue
            seen.add(nxt)
            queue.append((nxt, depth + 1))
    raise LayoutInvalid(f"Layout '{spec.layout.name}' has no winning line for the agent")
