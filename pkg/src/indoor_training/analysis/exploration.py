# src/indoor_training/analysis/exploration.py

import io
from enum import IntEnum
from typing import AbstractSet, Tuple, Union

import numpy as np

from ..core.mdp import Mdp
from ..models.results import ExplorationStats
from ..utils.exceptions import EmptyUnion

Pair = Tuple[int, int]


class GridCell(IntEnum):
    """Category of one (action, state) cell of an exploration grid."""
    NEITHER = 0
    BOTH = 1
    ONLY_L = 2
    ONLY_G = 3


# color index table for renderers, one entry per GridCell
GRID_COLORS = {
    GridCell.NEITHER: '#ffffff',
    GridCell.BOTH: '#7f7f7f',
    GridCell.ONLY_L: '#8c564b',
    GridCell.ONLY_G: '#1f77b4',
}


def exploration_stats(
    visited_l: AbstractSet[Pair],
    visited_g: AbstractSet[Pair],
    universe: Union[AbstractSet[Pair], int],
) -> ExplorationStats:
    """
    Share of visited pairs explored by both populations or by only one.

    Percentages are taken over the union of the two visited sets, so the
    three groups sum to 100. ``universe`` is either the set of legal pairs,
    which both visited sets must belong to, or just its size.

    Raises:
        EmptyUnion: if neither population visited anything
        ValueError: if a visited pair is outside ``universe``
    """
    visited_l, visited_g = frozenset(visited_l), frozenset(visited_g)
    if isinstance(universe, int):
        universe_size = universe
    else:
        outside = (visited_l | visited_g) - frozenset(universe)
        if outside:
            raise ValueError(
                f"{len(outside)} visited pair(s) are not legal, e.g. {sorted(outside)[0]}"
            )
        universe_size = len(universe)
    union = visited_l | visited_g
    if not union:
        raise EmptyUnion('Both visited sets are empty; exploration overlap is undefined')
    n = len(union)
    both = len(visited_l & visited_g)
    only_l = len(visited_l - visited_g)
    only_g = n - both - only_l
    p_l = 100.0 * only_l / n
    p_g = 100.0 * only_g / n
    return ExplorationStats(
        p_lg=100.0 * both / n,
        p_l=p_l,
        p_g=p_g,
        d_lg=p_l + p_g,
        union_size=n,
        universe=universe_size,
    )


def exploration_grid(
    visited_l: AbstractSet[Pair], visited_g: AbstractSet[Pair], mdp: Mdp
) -> np.ndarray:
    """(n_actions, n_states) matrix of GridCell values; illegal pairs stay NEITHER."""
    grid = np.full((mdp.n_actions, mdp.n_states), GridCell.NEITHER, dtype=np.int8)
    for s, a in visited_l:
        grid[a, s] = GridCell.BOTH if (s, a) in visited_g else GridCell.ONLY_L
    for s, a in visited_g:
        if (s, a) not in visited_l:
            grid[a, s] = GridCell.ONLY_G
    return grid


def grid_to_csv(grid: np.ndarray) -> str:
    """One row per action: ``action,<category index per state>``."""
    buf = io.StringIO()
    n_states = grid.shape[1]
    buf.write('action,' + ','.join(f"s{s}" for s in range(n_states)) + '\n')
    for a in range(grid.shape[0]):
        buf.write(f"{a}," + ','.join(str(int(v)) for v in grid[a]) + '\n')
    return buf.getvalue()


def color_table_csv() -> str:
    lines = ['index,category,color']
    lines.extend(f"{int(cell)},{cell.name.lower()},{color}" for cell, color in GRID_COLORS.items())
    return '\n'.join(lines) + '\n'
