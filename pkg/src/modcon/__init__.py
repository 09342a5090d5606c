"""Modulus consensus over networks with antagonistic interactions and switching topologies."""

from .signed_graph import (
    SignedArc,
    SignedDigraph,
    union,
    is_strongly_connected,
    has_spanning_tree,
    is_bidirectional,
    is_connected_bidirectional,
    parse_edgelist,
    format_edgelist,
)
from .schedule import (
    FiniteTrace,
    Periodic,
    SparseRecurrent,
    ConnectivityReport,
    Verdict,
    classify as classify_connectivity,
)
from .dynamics import (
    WeightMatrix,
    validate,
    step,
    simulate,
    StaticProvider,
    StateDependentProvider,
    Trajectory,
    SimulationError,
    NumericError,
)
from .metrics import (
    distance_to_J,
    max_modulus,
    ConsensusVerdict,
    classify as classify_outcome,
    check_monotone_M,
)
from .kuramoto import KuramotoConfig, lambda_star, sinc, kuramoto_step, to_weight_matrix, kuramoto_provider
from .scenarios import Scenario, ScenarioError, builtin, run, load, from_dict

__version__ = "0.1.0"
