"""Coined discrete-time quantum walks for formal-language acceptance."""

from .graph import PortGraph
from .coins import NonUnitaryError
from .walk import (
    CoinAssignment,
    WalkState,
    step,
    evolve,
    vertex_probability,
    inner_product,
    dense_step_matrix,
)
from .encoding import (
    QuantumInput,
    enumerate_words,
    initial_state,
    quantum_initial_state,
    sequential_initial_state,
    spatial_initial_state,
)
from .machines import (
    AcceptanceVerdict,
    Machine,
    acceptance_probability,
    classify,
    empirical_error_margin,
    export_machine,
    machine_for_length,
    member_word,
    sequential_ab,
    sequential_eq,
    sequential_word,
    spatial_ab,
    spatial_eq,
    word_acceptance,
)
from .metrics import JaroBreakdown, fidelity, jaro, reference_word

__version__ = "0.1.0"

__all__ = [
    "PortGraph",
    "NonUnitaryError",
    "CoinAssignment",
    "WalkState",
    "step",
    "evolve",
    "vertex_probability",
    "inner_product",
    "dense_step_matrix",
    "QuantumInput",
    "enumerate_words",
    "initial_state",
    "quantum_initial_state",
    "sequential_initial_state",
    "spatial_initial_state",
    "AcceptanceVerdict",
    "Machine",
    "acceptance_probability",
    "classify",
    "empirical_error_margin",
    "export_machine",
    "machine_for_length",
    "member_word",
    "sequential_ab",
    "sequential_eq",
    "sequential_word",
    "spatial_ab",
    "spatial_eq",
    "word_acceptance",
    "JaroBreakdown",
    "fidelity",
    "jaro",
    "reference_word",
]
