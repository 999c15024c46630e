//! Simulation and pulse-optimization toolkit for parametric two-qubit gates on
//! voltage-tunable superconducting qubits.
//!
//! The crate models a fixed transmon capacitively coupled to a tunable one whose
//! Josephson energy is modulated in time. It provides exact charge-basis spectra,
//! driven unitary propagation with gate-metric extraction, derivative-free pulse
//! optimization, Lindblad dynamics with relaxation, and perturbative estimates of
//! the conditional ZZ phase.
//!
//! Unit conventions used throughout: energies are stored as linear frequencies
//! (E/h in GHz), time is in ns, and phases accumulate as 2π·f·t.

pub mod circuit;
pub mod drive;
pub mod error;
pub mod evolution;
pub mod ode;
pub mod open_system;
pub mod optimizer;
pub mod perturbation;

pub use circuit::{
    build_charge_hamiltonian, build_coupled_system, diagonalize_qubit, effective_exchange_g,
    static_zz_rate, CircuitParams, CoupledSystem, QubitParams, SpectrumTable, TruncationConfig,
};
pub use drive::{
    harmonic_decomposition, DriveSchedule, HarmonicDecomposition, PulseEnvelope, ToneSpec,
};
pub use error::CoreError;
pub use evolution::{
    conditional_zz_phase, extract_error_budget, gate_fidelity, population_trace,
    propagate_unitary, virtual_z_reduce, ErrorBudget, GateMetrics, GateTarget, IntegratorConfig,
    PopulationTrace, Propagator,
};
pub use open_system::{
    collapse_operators, process_fidelity, propagate_lindblad, t1_threshold_scan, CollapseOp,
    LindbladConfig, ProcessMap, RateConvention, T1ScanPoint, T1ScanResult,
};
pub use optimizer::{
    objective_infidelity, optimize_pulse, optimize_pulse_warm, seed_frequencies, sensitivity_scan,
    GateSpec,
    OptimizationResult, PulseParams, ResonanceRule, SensitivityAxis, SensitivityPoint,
};
pub use perturbation::{
    bessel_weight, interaction_table, local_equivalence_reduce, rabi_offres_unitary,
    swap_condition_lhs, swap_condition_max, swap_condition_scan, zz_rate_estimate,
    InteractionEntry, InteractionTable, StatePhaseRate, SwapConditionPoint, ZZEstimate,
};

/// Shorthand for the complex scalar used in all propagators.
pub type C64 = num_complex::Complex64;
