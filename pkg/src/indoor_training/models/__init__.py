# src/indoor_training/models/__init__.py

from .agent import AgentConfig
from .base import (
    Algorithm,
    ElementPolicy,
    ExplorationKind,
    GameKind,
    Outcome,
    PacManAction,
    PaddleAction,
    PolicyKind,
    RewardSpec,
)
from .config import ExperimentConfig, SuiteConfig
from .experiment import EnvironmentDescriptor, ExperimentRole, ExperimentSpec, ProtocolConfig
from .game import GameSpec, LayoutSpec
from .noise import NoiseSpec
from .results import (
    CurvePoint,
    ExplorationStats,
    GapStats,
    PairResult,
    RunResult,
    SuiteResult,
    ValidationReport,
)

__all__ = [
    "AgentConfig",
    "Algorithm",
    "CurvePoint",
    "ElementPolicy",
    "EnvironmentDescriptor",
    "ExperimentConfig",
    "ExperimentRole",
    "ExperimentSpec",
    "ExplorationKind",
    "ExplorationStats",
    "GameKind",
    "GameSpec",
    "GapStats",
    "LayoutSpec",
    "NoiseSpec",
    "Outcome",
    "PacManAction",
    "PaddleAction",
    "PairResult",
    "PolicyKind",
    "ProtocolConfig",
    "RewardSpec",
    "RunResult",
    "SuiteConfig",
    "SuiteResult",
    "ValidationReport",
]
