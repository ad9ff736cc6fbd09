from .config import (
    default_workers,
    experiment_spec_from_config,
    load_experiment_config,
    load_suite_config,
    suite_pairs_from_config,
)
from .manifest import generalization_source, make_pair, protocol_manifest, protocol_targets
from .persistence import read_run, read_suite, write_run
from .runner import MdpStore, run_experiment, train_agent
from .seeding import StreamRole, agent_seed, noise_stream_seed, stream_rng
from .specs import make_generalization_spec, make_learnability_spec
from .suite import SuiteRunner, run_suite

__all__ = [
    "MdpStore",
    "StreamRole",
    "SuiteRunner",
    "agent_seed",
    "default_workers",
    "experiment_spec_from_config",
    "generalization_source",
    "load_experiment_config",
    "load_suite_config",
    "make_generalization_spec",
    "make_learnability_spec",
    "make_pair",
    "noise_stream_seed",
    "protocol_manifest",
    "protocol_targets",
    "read_run",
    "read_suite",
    "run_experiment",
    "run_suite",
    "stream_rng",
    "suite_pairs_from_config",
    "train_agent",
    "write_run",
]
