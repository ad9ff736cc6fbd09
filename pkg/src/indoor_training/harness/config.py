# src/indoor_training/harness/config.py

import logging
import os
from pathlib import Path
from typing import List, Optional, Type, TypeVar, Union

from pydantic import ValidationError as PydanticValidationError

from ..games.layout import load_layout, make_game
from ..models.base import LabModel
from ..models.config import EnvSection, ExperimentConfig, GameSection, NoiseSection, SuiteConfig
from ..models.experiment import EnvironmentDescriptor, ExperimentSpec, ProtocolConfig
from ..models.game import GameSpec, LayoutSpec
from ..models.noise import NoiseSpec
from ..utils.exceptions import ConfigError, ValidationError
from ..validation.validator import SchemaValidator
from .manifest import TargetPair, make_pair, protocol_manifest
from .specs import make_generalization_spec, make_learnability_spec

logger = logging.getLogger(__name__)

WORKERS_ENV = "INDOOR_TRAINING_WORKERS"

ConfigT = TypeVar("ConfigT", bound=LabModel)


def _load(path: Union[str, Path], document_type: str, model: Type[ConfigT],
          validator: Optional[SchemaValidator] = None) -> ConfigT:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")
    try:
        text = path.read_text(encoding="utf-8")
        data = (validator or SchemaValidator()).validate(document_type, text)
        config = model.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{path}: {e}") from e
    except PydanticValidationError as e:
        err = e.errors()[0]
        where = ".".join(str(p) for p in err["loc"]) or "<root>"
        raise ConfigError(f"{path}: invalid value at '{where}': {err['msg']}") from e
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e}") from e
    logger.debug(f"Loaded {document_type} config from {path}")
    return config


def load_experiment_config(
    path: Union[str, Path], validator: Optional[SchemaValidator] = None
) -> ExperimentConfig:
    """
    Read a ``run`` config: JSON schema first, then the pydantic model.

    Raises:
        ConfigError: naming the file and the offending key
    """
    return _load(path, "experiment", ExperimentConfig, validator)


def load_suite_config(
    path: Union[str, Path], validator: Optional[SchemaValidator] = None
) -> SuiteConfig:
    return _load(path, "suite", SuiteConfig, validator)


def _game(section: GameSection, layout: LayoutSpec, env: EnvSection) -> GameSpec:
    return make_game(
        section.kind,
        layout,
        env.policy,
        section.resolved_rewards(),
        section.discount,
        section.ball_velocity,
    )


def _descriptor(section: GameSection, layout: LayoutSpec, env: EnvSection,
                noise: NoiseSection) -> EnvironmentDescriptor:
    return EnvironmentDescriptor(
        game=_game(section, layout, env),
        noise=NoiseSpec(std=env.noise_std, **noise.model_dump()),
    )


def _protocol(protocol: ProtocolConfig, seed: Optional[int]) -> ProtocolConfig:
    if seed is None:
        return protocol
    return ProtocolConfig(**{**protocol.model_dump(), "base_seed": seed})


def experiment_spec_from_config(config: ExperimentConfig, seed: Optional[int] = None) -> ExperimentSpec:
    """
    The run described by a config; identical train and test sections make a
    Learnability run, anything else a Generalization run.
    """
    layout = load_layout(config.layout.source)
    train = _descriptor(config.game, layout, config.train_env, config.noise)
    test = _descriptor(config.game, layout, config.test_env, config.noise)
    protocol = _protocol(config.protocol, seed)
    if train == test:
        return make_learnability_spec(test, config.agent, protocol)
    return make_generalization_spec(train, test, config.agent, protocol)


def suite_pairs_from_config(config: SuiteConfig, seed: Optional[int] = None) -> List[TargetPair]:
    """Explicit pairs first, then the generated protocol manifest if requested."""
    protocol = _protocol(config.protocol, seed)
    pairs: List[TargetPair] = []
    for section in config.pairs:
        layout = load_layout(section.layout.source)
        target = _descriptor(config.game, layout, section.target, config.noise)
        source = _descriptor(config.game, layout, section.source, config.noise)
        pairs.append(make_pair(target, config.agent, protocol, source))
    if config.manifest is not None:
        pairs.extend(
            protocol_manifest(
                config.game.kind,
                config.agent,
                protocol,
                config.manifest.counting,
                config.manifest.layouts,
                rewards=config.game.resolved_rewards(),
                discount=config.game.discount,
                noise=NoiseSpec(**config.noise.model_dump()),
            )
        )
    return pairs


def default_workers(cli_value: Optional[int] = None) -> int:
    """``--workers`` when given, else ``INDOOR_TRAINING_WORKERS``, else 1."""
    if cli_value is not None:
        return cli_value
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return 1
    try:
        workers = int(raw)
    except ValueError as e:
        raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from e
    if workers < 1:
        raise ConfigError(f"{WORKERS_ENV} must be >= 1, got {workers}")
    return workers

