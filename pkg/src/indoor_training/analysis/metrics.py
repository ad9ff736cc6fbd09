# src/indoor_training/analysis/metrics.py

import logging
import math
from typing import Sequence, Tuple, Union

import numpy as np
from scipy.integrate import trapezoid

from ..games.dynamics import min_steps_to_win
from ..models.experiment import ExperimentSpec
from ..models.game import GameSpec
from ..models.results import CurvePoint, RunResult

logger = logging.getLogger(__name__)

Curve = Union[RunResult, Sequence[CurvePoint], Sequence[Tuple[float, float]]]


def _points(curve: Curve) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(curve, RunResult):
        curve = curve.curve
    episodes, values = [], []
    for point in curve:
        if isinstance(point, CurvePoint):
            episodes.append(point.episode)
            values.append(point.mean_return)
        else:
            episodes.append(point[0])
            values.append(point[1])
    return np.asarray(episodes, dtype=np.float64), np.asarray(values, dtype=np.float64)


def auc(curve: Curve) -> float:
    """
    Average height of a reward curve: trapezoid area over its episode span.

    A single-point curve has the height of its only point.
    """
    episodes, values = _points(curve)
    if values.size == 0:
        raise ValueError('auc needs a curve with at least one point')
    if values.size == 1:
        return float(values[0])
    span = episodes[-1] - episodes[0]
    return float(trapezoid(values, episodes) / span)


def r_max_for(target: Union[ExperimentSpec, GameSpec]) -> float:
    """
    Best-case episode return of a game: every item collected along the
    shortest winning line, ignoring stochastic elements.

    An ExperimentSpec with ``protocol.r_max`` set returns that override;
    otherwise the test environment's game is used.
    """
    if isinstance(target, ExperimentSpec):
        if target.protocol.r_max is not None:
            return float(target.protocol.r_max)
        target = target.test_env.game
    rewards = target.rewards
    n_items = len(target.layout.geometry.items)
    return float(
        rewards.win_reward
        + n_items * rewards.food_reward
        + min_steps_to_win(target) * rewards.step_penalty
    )


def regret_ratio(l: Curve, g: Curve, r_max: float) -> float:
    """
    (r_max - auc(l)) / (r_max - auc(g)); above 1 the Generalization side did better.

    Zero Generalization regret returns ``math.inf`` (or 1.0 when the
    Learnability regret is zero as well).
    """
    regret_l = r_max - auc(l)
    regret_g = r_max - auc(g)
    if regret_l < 0 or regret_g < 0:
        logger.warning(f"r_max {r_max} is below a curve's AUC; regrets are negative")
    if regret_g == 0.0:
        if regret_l == 0.0:
            return 1.0
        logger.warning('Generalization regret is zero; regret ratio reported as inf')
        return math.inf
    return regret_l / regret_g
