# src/indoor_training/harness/specs.py

import logging
from typing import Optional

from ..models.agent import AgentConfig
from ..models.experiment import (
    EnvironmentDescriptor,
    ExperimentRole,
    ExperimentSpec,
    ProtocolConfig,
)
from ..utils.exceptions import IncompatibleEnvironments

logger = logging.getLogger(__name__)


def make_learnability_spec(
    target: EnvironmentDescriptor,
    agent: Optional[AgentConfig] = None,
    protocol: Optional[ProtocolConfig] = None,
) -> ExperimentSpec:
    """Agents trained and tested on the same target environment."""
    return ExperimentSpec(
        role=ExperimentRole.LEARNABILITY,
        train_env=target,
        test_env=target,
        agent=agent or AgentConfig(),
        protocol=protocol or ProtocolConfig(),
    )


def make_generalization_spec(
    source: EnvironmentDescriptor,
    target: EnvironmentDescriptor,
    agent: Optional[AgentConfig] = None,
    protocol: Optional[ProtocolConfig] = None,
) -> ExperimentSpec:
    """
    Agents trained on ``source`` and tested zero-shot on ``target``.

    Raises:
        IncompatibleEnvironments: if the two environments do not share a board
    """
    if not source.game.same_board(target.game):
        raise IncompatibleEnvironments(
            f"Cannot transfer from {source.label} to {target.label}: different boards"
        )
    return ExperimentSpec(
        role=ExperimentRole.GENERALIZATION,
        train_env=source,
        test_env=target,
        agent=agent or AgentConfig(),
        protocol=protocol or ProtocolConfig(),
    )
