"""Exact analysis and seeded simulation of quantum Monty Hall games."""

from .engine import (
    GameAnalysis,
    GameSpec,
    InvalidGameSpec,
    SimulationReport,
    enumerate_joint,
    simulate,
    validate,
)
from .exactnum import ExactAmplitude
from .games import (
    CROSSOVER_Q,
    EpistemicParams,
    classic_game,
    ignorant_game,
    make_game,
    psi_epistemic_game,
    psi_ontic_game,
    sweep_epistemic,
)
from .qcore import (
    Ket,
    ProbabilityTable,
    born_matrix,
    born_probability,
    inner,
    is_antidistinguishable,
    pbr_basis,
    pbr_states,
    tensor,
)
from .teleport import (
    BellLabel,
    CorrectionOp,
    QubitState,
    correction_for,
    monty_teleport_game,
    simulate_teleport,
    teleport_step,
    unreliable_analysis,
)

__version__ = "0.1.0"

__all__ = [
    "BellLabel",
    "CROSSOVER_Q",
    "CorrectionOp",
    "EpistemicParams",
    "ExactAmplitude",
    "GameAnalysis",
    "GameSpec",
    "InvalidGameSpec",
    "Ket",
    "ProbabilityTable",
    "QubitState",
    "SimulationReport",
    "born_matrix",
    "born_probability",
    "classic_game",
    "correction_for",
    "enumerate_joint",
    "ignorant_game",
    "inner",
    "is_antidistinguishable",
    "make_game",
    "monty_teleport_game",
    "pbr_basis",
    "pbr_states",
    "psi_epistemic_game",
    "psi_ontic_game",
    "simulate",
    "simulate_teleport",
    "sweep_epistemic",
    "teleport_step",
    "tensor",
    "unreliable_analysis",
    "validate",
]
