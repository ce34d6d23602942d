"""Exact sparse Fock-space simulation and closed-form analysis of heralded
schemes that prepare d-mode N-photon NOON states."""

from .analysis import (
    LossModel,
    ResourceCount,
    SweepRow,
    SweepSpec,
    asymptotic_ratio,
    closed_form_component_magnitude,
    closed_form_probability,
    format_float,
    generator_magnitudes,
    loss_adjusted_probability,
    optimal_alpha_sq,
    resource_counts,
    run_sweep,
    simulated_probability,
    sweep_to_csv,
    sweep_to_json,
)
from .elements import (
    BeamSplitter,
    CrossKerr,
    Element,
    HeraldedOutcome,
    PhaseShifter,
    PolarizingBS,
    apply_element,
    apply_fsf,
    bs_matrix_element,
    project_photons,
    two_photon_herald,
    two_photon_projector,
)
from .fock import (
    FockState,
    Occupation,
    PRUNE_THRESHOLD,
    amplitude,
    make_coherent_truncated,
    make_fock,
    norm_sq,
    restrict_total_photons,
    state_rows,
    tensor,
)
from .pipelines import (
    MethodConfig,
    NoonReport,
    collapse_polarization,
    extract_noon,
    generator_even,
    generator_kerr,
    generator_odd,
    run_method,
    run_method1,
    run_method2,
    run_method3,
    run_method4,
    split_evenly,
)

__version__ = "0.1.0"

__all__ = [
    "BeamSplitter",
    "CrossKerr",
    "Element",
    "FockState",
    "HeraldedOutcome",
    "LossModel",
    "MethodConfig",
    "NoonReport",
    "Occupation",
    "PRUNE_THRESHOLD",
    "PhaseShifter",
    "PolarizingBS",
    "ResourceCount",
    "SweepRow",
    "SweepSpec",
    "amplitude",
    "apply_element",
    "apply_fsf",
    "asymptotic_ratio",
    "bs_matrix_element",
    "closed_form_component_magnitude",
    "closed_form_probability",
    "collapse_polarization",
    "extract_noon",
    "format_float",
    "generator_even",
    "generator_kerr",
    "generator_magnitudes",
    "generator_odd",
    "loss_adjusted_probability",
    "make_coherent_truncated",
    "make_fock",
    "norm_sq",
    "optimal_alpha_sq",
    "project_photons",
    "resource_counts",
    "restrict_total_photons",
    "run_method",
    "run_method1",
    "run_method2",
    "run_method3",
    "run_method4",
    "run_sweep",
    "simulated_probability",
    "split_evenly",
    "state_rows",
    "sweep_to_csv",
    "sweep_to_json",
    "tensor",
    "two_photon_herald",
    "two_photon_projector",
]
