# src/indoor_training/analysis/stats.py

from typing import Sequence, Tuple

import numpy as np
from scipy import stats

from ..utils.exceptions import DegenerateRanks, DegenerateSamples, LengthMismatch


def welch_t_test(sample_a: Sequence[float], sample_b: Sequence[float]) -> Tuple[float, float]:
    """
    Two-sided Welch t-test (unequal variances, Welch-Satterthwaite dof).

    Returns (t, p). t is positive when ``sample_a`` has the larger mean.

    Raises:
        DegenerateSamples: if a sample has fewer than two values or both
            samples have zero variance
    """
    a = np.asarray(sample_a, dtype=np.float64)
    b = np.asarray(sample_b, dtype=np.float64)
    if a.size < 2 or b.size < 2:
        raise DegenerateSamples(
            f"Welch's test needs at least two values per sample, got {a.size} and {b.size}"
        )
    if a.var() == 0.0 and b.var() == 0.0:
        raise DegenerateSamples('Both samples have zero variance')
    result = stats.ttest_ind(a, b, equal_var=False)
    return float(result.statistic), float(result.pvalue)


def spearman(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float]:
    """
    Spearman rank correlation with average ranks for ties.

    Returns (rho, p); p is two-sided from the t approximation.

    Raises:
        LengthMismatch: if the inputs differ in length or have fewer than 3 values
        DegenerateRanks: if either input is constant
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape:
        raise LengthMismatch(f"Inputs have different lengths: {x.size} and {y.size}")
    if x.size < 3:
        raise LengthMismatch(f"Spearman correlation needs at least 3 pairs, got {x.size}")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DegenerateRanks('An input is constant; its ranks are all tied')
    result = stats.spearmanr(x, y)
    return float(result.statistic), float(result.pvalue)
