from .exceptions import (
    ConfigError,
    DegenerateRanks,
    DegenerateSamples,
    EmptyUnion,
    EnvironmentFault,
    IllegalAction,
    IncompatibleEnvironments,
    InconsistentIndex,
    IndoorTrainingError,
    LayoutInvalid,
    LengthMismatch,
    NoLegalMove,
    ShapeMismatch,
    StateSpaceOverflow,
    ValidationError,
    WorkerFailure,
)

__all__ = [
    "ConfigError",
    "DegenerateRanks",
    "DegenerateSamples",
    "EmptyUnion",
    "EnvironmentFault",
    "IllegalAction",
    "IncompatibleEnvironments",
    "InconsistentIndex",
    "IndoorTrainingError",
    "LayoutInvalid",
    "LengthMismatch",
    "NoLegalMove",
    "ShapeMismatch",
    "StateSpaceOverflow",
    "ValidationError",
    "WorkerFailure",
]
