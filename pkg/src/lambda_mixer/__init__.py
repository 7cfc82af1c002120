"""Steady-state simulator and design calculator for four-wave-mixing
suppression in a double-lambda EIT medium with an auxiliary Raman absorber."""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    InfeasibleTargetError,
    IntegrationError,
    LambdaMixerError,
    SingularityError,
    ValidationError,
    Violation,
)
from .model import (
    AtomicLine,
    CouplingMatrix,
    EitMedium,
    FieldPair,
    RamanAbsorber,
    ScanOptions,
    Scenario,
    SweepSpec,
    compute_optical_depth,
    validate,
)
from .propagation import (
    TransferMatrix,
    analytic_resonant_output,
    approx_output_with_absorber,
    build_coupling_matrix,
    eit_reference_transmission,
    n_fwm,
    noise_suppression_ratio,
    propagate,
    transfer_matrix,
)
from .susceptibility import (
    AbsorberResponse,
    absorber_response,
    chi_2ph,
    chi_abs,
    effective_depth,
    normalized_lineshape,
    two_photon_width,
)
from .scan import (
    SpectrumRecord,
    asymmetry_metric,
    default_detuning_spec,
    sweep_absorber_depth,
    sweep_detuning,
)
from .design import (
    DesignReport,
    bandwidth_check,
    full_report,
    fwm_strength,
    rabi_window,
    raman_scatter_strength,
    solve_omega_a,
)
from .scenario import load_scenario, parse_scenario_text, resolve_scenario_path

__all__ = [
    "__version__",
    "AbsorberResponse",
    "AtomicLine",
    "CouplingMatrix",
    "DesignReport",
    "DomainError",
    "EitMedium",
    "FieldPair",
    "InfeasibleTargetError",
    "IntegrationError",
    "LambdaMixerError",
    "RamanAbsorber",
    "ScanOptions",
    "Scenario",
    "SingularityError",
    "SpectrumRecord",
    "SweepSpec",
    "TransferMatrix",
    "ValidationError",
    "Violation",
    "absorber_response",
    "analytic_resonant_output",
    "approx_output_with_absorber",
    "asymmetry_metric",
    "bandwidth_check",
    "build_coupling_matrix",
    "chi_2ph",
    "chi_abs",
    "compute_optical_depth",
    "default_detuning_spec",
    "effective_depth",
    "eit_reference_transmission",
    "full_report",
    "fwm_strength",
    "load_scenario",
    "n_fwm",
    "noise_suppression_ratio",
    "normalized_lineshape",
    "parse_scenario_text",
    "propagate",
    "rabi_window",
    "raman_scatter_strength",
    "resolve_scenario_path",
    "solve_omega_a",
    "sweep_absorber_depth",
    "sweep_detuning",
    "transfer_matrix",
    "two_photon_width",
    "validate",
]
