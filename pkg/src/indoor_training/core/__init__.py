from .builder import DEFAULT_STATE_CAP, build_mdp, build_transition_table, enumerate_states
from .environment import MdpEnvironment, sample_successor
from .io import dumps_mdp, mdp_from_document, mdp_to_document, read_mdp, write_mdp
from .mdp import ROW_SUM_TOL, Mdp, StateIndex, TransitionTable
from .validate import validate_mdp

__all__ = [
    "DEFAULT_STATE_CAP",
    "Mdp",
    "MdpEnvironment",
    "ROW_SUM_TOL",
    "StateIndex",
    "TransitionTable",
    "build_mdp",
    "build_transition_table",
    "dumps_mdp",
    "enumerate_states",
    "mdp_from_document",
    "mdp_to_document",
    "read_mdp",
    "sample_successor",
    "validate_mdp",
    "write_mdp",
]
