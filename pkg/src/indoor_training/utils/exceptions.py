# src/indoor_training/utils/exceptions.py


class IndoorTrainingError(Exception):
    """Base exception for all indoor-training lab errors."""
    pass


class ValidationError(IndoorTrainingError):
    """Raised when a config or exported document fails schema/model validation."""
    pass


class ConfigError(ValidationError):
    """Raised when an experiment or suite config cannot be loaded."""
    pass


class LayoutInvalid(IndoorTrainingError):
    """Raised for malformed layout grids or layouts that do not fit the game kind."""
    pass


class StateSpaceOverflow(IndoorTrainingError):
    """Raised when state enumeration exceeds the configured cap."""
    pass


class InconsistentIndex(IndoorTrainingError):
    """Raised when a successor configuration is missing from the state index."""
    pass


class NoLegalMove(IndoorTrainingError):
    """Raised when a stochastic element has no legal move or teleport target."""
    pass


class IllegalAction(IndoorTrainingError):
    """Raised when an action is not legal in the given state."""
    pass


class ShapeMismatch(IndoorTrainingError):
    """Raised when two transition tables do not share state count and row keys."""
    pass


class EnvironmentFault(IndoorTrainingError):
    """Raised when an environment returns a successor outside its state index."""
    pass


class IncompatibleEnvironments(IndoorTrainingError):
    """Raised when two environments do not share a layout and state index."""
    pass


class WorkerFailure(IndoorTrainingError):
    """Raised when one agent run of a population aborts."""

    def __init__(self, message: str, agent_index: int = -1, seed: int = -1):
        # args carry every field so the exception survives worker pickling
        super().__init__(message, agent_index, seed)
        self.message = message
        self.agent_index = agent_index
        self.seed = seed

    def __str__(self) -> str:
        return f"agent {self.agent_index} (seed {self.seed}) failed: {self.message}"


class EmptyUnion(IndoorTrainingError):
    """Raised when both visited sets are empty."""
    pass


class DegenerateSamples(IndoorTrainingError):
    """Raised when a t-test sample is too small or both samples have zero variance."""
    pass


class LengthMismatch(IndoorTrainingError):
    """Raised when paired inputs differ in length."""
    pass


class DegenerateRanks(IndoorTrainingError):
    """Raised when rank correlation is undefined (constant input)."""
    pass
