"""
Indoor-Training Lab
===================

Exact tabular MDPs of small PacMan, Pong and Breakout grids, Gaussian
transition noise, Q-learning/SARSA agent populations, and the analysis that
compares agents trained on a target environment against agents trained on
its clean counterpart and tested zero-shot.
"""

__version__ = "0.1.0"

from .harness.runner import run_experiment
from .harness.specs import make_generalization_spec, make_learnability_spec
from .harness.suite import run_suite

__all__ = [
    "make_generalization_spec",
    "make_learnability_spec",
    "run_experiment",
    "run_suite",
]
