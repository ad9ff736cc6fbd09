from .delta import (
    DeltaEnvironment,
    inject_noise,
    legal_shape_distance,
    non_standard_mass,
    perturb_distribution,
    resample,
    table_distance,
)
from .environment import NoisyEnvironment, make_environment

__all__ = [
    "DeltaEnvironment",
    "NoisyEnvironment",
    "inject_noise",
    "legal_shape_distance",
    "make_environment",
    "non_standard_mass",
    "perturb_distribution",
    "resample",
    "table_distance",
]
