"""Quantum prisoner's dilemma on spin-orbit modes of a classical laser beam.

The protocol entangles polarization (Alice) with the first-order spatial
mode (Bob), lets each player act with an SU(2) mode converter, disentangles,
and reads the four output ports as the game outcome.
"""

from .analysis import (
    ClassicalCheck,
    EquilibriumReport,
    SurfacePoint,
    best_response,
    classical_minimum_check,
    nash_discrete,
    param_to_strategy,
    sweep,
    t_grid,
)
from .game import (
    AllDark,
    BadDistribution,
    Intensities,
    NAMED_STRATEGIES,
    Outcome,
    PayoffTable,
    STRATEGY_TAGS,
    Strategy,
    canonical_strategy,
    classical_mixed,
    coefficient_table,
    intensities_to_probs,
    payoffs,
    protocol_amplitudes,
    run_protocol,
)
from .optics import (
    CalibrationFailed,
    ConverterParams,
    MissingPhase,
    PipelineReport,
    calibrate,
    calibrated_disentangler,
    calibration_report,
    disentangler_pipeline,
    entangler,
    mode_converter,
    mz,
    named_element,
    prepare_initial,
)
from .qmath import (
    BASIS_LABELS,
    SpinOrbitState,
    adjoint,
    apply,
    basis_state,
    concurrence,
    is_unitary,
    phase_aligned_distance,
    tensor,
    unitarity_defect,
)
from .render import FieldGrid, PortImage, hg_field, port_images, render_outcome, write_image

__version__ = "0.1.0"

__all__ = [
    "AllDark",
    "BASIS_LABELS",
    "BadDistribution",
    "CalibrationFailed",
    "ClassicalCheck",
    "ConverterParams",
    "EquilibriumReport",
    "FieldGrid",
    "Intensities",
    "MissingPhase",
    "NAMED_STRATEGIES",
    "Outcome",
    "PayoffTable",
    "PipelineReport",
    "PortImage",
    "STRATEGY_TAGS",
    "SpinOrbitState",
    "Strategy",
    "SurfacePoint",
    "adjoint",
    "apply",
    "basis_state",
    "best_response",
    "calibrate",
    "calibrated_disentangler",
    "calibration_report",
    "canonical_strategy",
    "classical_minimum_check",
    "classical_mixed",
    "coefficient_table",
    "concurrence",
    "disentangler_pipeline",
    "entangler",
    "hg_field",
    "intensities_to_probs",
    "is_unitary",
    "mode_converter",
    "mz",
    "named_element",
    "nash_discrete",
    "param_to_strategy",
    "payoffs",
    "phase_aligned_distance",
    "port_images",
    "prepare_initial",
    "protocol_amplitudes",
    "render_outcome",
    "run_protocol",
    "sweep",
    "t_grid",
    "tensor",
    "unitarity_defect",
    "write_image",
]
