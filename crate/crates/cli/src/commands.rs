//! Batch commands: each takes a parsed config and emits CSV/JSON reports into
//! the output directory.

use std::path::Path;

use serde_json::json;

use gatecraft_core::evolution::{population_trace, IntegratorConfig};
use gatecraft_core::{
    build_coupled_system, interaction_table, optimize_pulse, optimize_pulse_warm, sensitivity_scan,
    static_zz_rate, t1_threshold_scan, zz_rate_estimate, CoupledSystem, GateMetrics,
    OptimizationResult, SensitivityAxis,
};

use crate::config::{ExperimentConfig, SweepAxis};
use crate::report::{fmt_float, unwrap_phases, ReportWriter};
use crate::CliError;

/// Dressed transition pairs reported by the spectrum command.
const COUPLED_PAIRS: [((usize, usize), (usize, usize), &str); 7] = [
    ((0, 0), (1, 1), "00<->11"),
    ((0, 1), (1, 0), "01<->10"),
    ((1, 1), (2, 2), "11<->22"),
    ((1, 2), (2, 1), "12<->21"),
    ((0, 2), (1, 1), "02<->11"),
    ((1, 0), (2, 1), "10<->21"),
    ((1, 1), (2, 0), "11<->20"),
];

fn build_system(config: &ExperimentConfig) -> Result<CoupledSystem, CliError> {
    let params = config.circuit_params()?;
    for w in params.warnings() {
        eprintln!("warning: {w}");
    }
    let trunc = config.truncation_config()?;
    Ok(build_coupled_system(&params, &trunc)?)
}

fn metrics_row(x_value: f64, metrics: &GateMetrics, zeta_unwrapped: f64) -> Vec<String> {
    let b = &metrics.error_budget;
    vec![
        fmt_float(x_value),
        fmt_float(b.total_err),
        fmt_float(b.phase_err),
        fmt_float(b.leakage_err),
        fmt_float(b.rotation_err),
        fmt_float(zeta_unwrapped),
    ]
}

/// `spectrum`: static tables and the ZZ rate.
pub fn cmd_spectrum(config: &ExperimentConfig, out_dir: &Path) -> Result<(), CliError> {
    let sys = build_system(config)?;
    let writer = ReportWriter::new(out_dir, config)?;

    let mut rows = Vec::new();
    for (name, spec) in [("fixed", &sys.spectra.0), ("tunable", &sys.spectra.1)] {
        for (k, freq) in spec.transitions.iter().take(3).enumerate() {
            rows.push(vec![
                name.to_string(),
                format!("{k}->{}", k + 1),
                fmt_float(*freq),
            ]);
        }
    }
    writer.write_csv("spectrum_single.csv", &["qubit", "transition", "freq_ghz"], &rows)?;

    let mut rows = Vec::new();
    for (a, b, name) in COUPLED_PAIRS {
        rows.push(vec![
            name.to_string(),
            fmt_float(sys.dressed_transition(a, b)?),
        ]);
    }
    writer.write_csv("spectrum_coupled.csv", &["pair", "freq_ghz"], &rows)?;

    let zz = static_zz_rate(&sys)?;
    writer.write_json("static_zz.json", json!({ "rate_mhz": zz * 1e3 }))?;
    Ok(())
}

fn optimize_from_config(
    config: &ExperimentConfig,
    sys: &CoupledSystem,
) -> Result<(gatecraft_core::GateSpec, OptimizationResult), CliError> {
    let gate = config
        .gate
        .as_ref()
        .ok_or_else(|| CliError::Validation("gate: section required for this command".into()))?;
    let spec = config.gate_spec(gate)?;
    let result = optimize_pulse(sys, &spec, gate.budget)?;
    Ok((spec, result))
}

fn optimum_json(result: &OptimizationResult) -> serde_json::Value {
    let m = &result.metrics;
    let b = &m.error_budget;
    json!({
        "params": {
            "delta_ej_ghz": result.best_params.delta_ej,
            "omega_p_ghz": result.best_params.omega_p,
        },
        "metrics": {
            "fidelity": m.fidelity,
            "total_err": b.total_err,
            "phase_err": b.phase_err,
            "leakage_err": b.leakage_err,
            "rotation_err": b.rotation_err,
            "zeta_rad": m.zeta_phase,
            "leakage_angle_rad": m.leakage_angle,
            "rotation_angle_rad": m.rotation_angle,
            "swap_angle_rad": m.swap_angle,
            "virtual_z_rad": m.virtual_z,
        },
        "evaluations": result.evaluations,
        "converged": result.converged,
    })
}

/// `optimize`: single-point pulse optimization with population traces.
pub fn cmd_optimize(config: &ExperimentConfig, out_dir: &Path) -> Result<(), CliError> {
    let sys = build_system(config)?;
    let writer = ReportWriter::new(out_dir, config)?;
    let (spec, result) = optimize_from_config(config, &sys)?;
    writer.write_json("optimum.json", optimum_json(&result))?;

    let schedule = result
        .best_params
        .schedule(&spec, sys.params.tunable.e_j)?;
    let labels = [
        (0, 0),
        (0, 1),
        (1, 0),
        (1, 1),
        (0, 2),
        (2, 0),
        (1, 2),
        (2, 1),
    ];
    let mut rows = Vec::new();
    for initial in [(1, 0), (1, 1)] {
        let trace = population_trace(
            &sys,
            &schedule,
            initial,
            spec.t_gate / 150.0,
            &IntegratorConfig::default(),
        )?;
        for (k, t) in trace.times.iter().enumerate() {
            let mut row = vec![
                format!("{}{}", initial.0, initial.1),
                fmt_float(*t),
            ];
            for lb in labels {
                row.push(fmt_float(trace.population(&sys, lb, k)?));
            }
            rows.push(row);
        }
    }
    writer.write_csv(
        "populations.csv",
        &[
            "initial", "t_ns", "p00", "p01", "p10", "p11", "p02", "p20", "p12", "p21",
        ],
        &rows,
    )?;

    if !result.converged {
        return Err(CliError::NonConvergence(format!(
            "optimization did not converge within {} evaluations (best total_err {})",
            result.evaluations, result.metrics.error_budget.total_err
        )));
    }
    Ok(())
}

/// `sweep`: per-point re-optimization over J_C with warm starts carried along
/// the sweep; ζ is unwrapped across the points.
pub fn cmd_sweep(config: &ExperimentConfig, out_dir: &Path) -> Result<(), CliError> {
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Validation("sweep: section required".into()))?;
    if sweep.axis != SweepAxis::JC {
        return Err(CliError::Validation(
            "sweep.axis: the sweep command scans j_c".into(),
        ));
    }
    let gate = config
        .gate
        .as_ref()
        .ok_or_else(|| CliError::Validation("gate: section required".into()))?;
    let writer = ReportWriter::new(out_dir, config)?;

    let mut rows = Vec::new();
    let mut zetas = Vec::new();
    let mut results: Vec<Option<OptimizationResult>> = Vec::new();
    let mut warm: Option<gatecraft_core::PulseParams> = None;
    for &j_c in &sweep.values {
        let mut point_cfg = config.clone();
        point_cfg.circuit.j_c = j_c;
        let outcome = (|| -> Result<OptimizationResult, CliError> {
            let sys = build_system(&point_cfg)?;
            let spec = point_cfg.gate_spec(gate)?;
            Ok(optimize_pulse_warm(&sys, &spec, gate.budget, warm.as_ref())?)
        })();
        match outcome {
            Ok(result) => {
                warm = Some(result.best_params.clone());
                zetas.push(result.metrics.zeta_phase);
                results.push(Some(result));
            }
            Err(e) => {
                eprintln!("warning: sweep point j_c = {j_c} failed: {e}");
                zetas.push(f64::NAN);
                results.push(None);
            }
        }
    }
    // Unwrap over the successful points only.
    let mut finite: Vec<f64> = zetas.iter().copied().filter(|z| z.is_finite()).collect();
    unwrap_phases(&mut finite);
    let mut it = finite.into_iter();
    let unwrapped: Vec<f64> = zetas
        .iter()
        .map(|z| if z.is_finite() { it.next().unwrap() } else { f64::NAN })
        .collect();

    for ((&j_c, result), zeta) in sweep.values.iter().zip(&results).zip(&unwrapped) {
        match result {
            Some(r) => {
                let mut row = metrics_row(j_c * 1e3, &r.metrics, *zeta);
                row.push("ok".into());
                rows.push(row);
            }
            None => {
                rows.push(vec![
                    fmt_float(j_c * 1e3),
                    "nan".into(),
                    "nan".into(),
                    "nan".into(),
                    "nan".into(),
                    "nan".into(),
                    "error".into(),
                ]);
            }
        }
    }
    writer.write_csv(
        "sweep.csv",
        &[
            "j_c_mhz",
            "total_err",
            "phase_err",
            "leakage_err",
            "rotation_err",
            "zeta_rad_unwrapped",
            "status",
        ],
        &rows,
    )?;
    if results.iter().any(|r| r.is_none()) {
        return Err(CliError::Numeric("one or more sweep points failed".into()));
    }
    Ok(())
}

/// `sensitivity`: one-axis error scan around the optimized point.
pub fn cmd_sensitivity(config: &ExperimentConfig, out_dir: &Path) -> Result<(), CliError> {
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Validation("sweep: section required (axis + offsets)".into()))?;
    let axis = match sweep.axis {
        SweepAxis::DeltaEj => SensitivityAxis::DeltaEj,
        SweepAxis::JC => SensitivityAxis::Jc,
        SweepAxis::T1 => {
            return Err(CliError::Validation(
                "sweep.axis: sensitivity scans delta_ej or j_c".into(),
            ))
        }
    };
    let sys = build_system(config)?;
    let writer = ReportWriter::new(out_dir, config)?;
    let (spec, result) = optimize_from_config(config, &sys)?;

    // sweep.values are interpreted as signed offsets around the optimum.
    let lo = sweep.values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = sweep.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let points = sensitivity_scan(&sys, &spec, &result, axis, (lo, hi), sweep.values.len())?;

    let mut rows = Vec::new();
    for p in &points {
        rows.push(vec![
            fmt_float(p.offset),
            fmt_float(p.total_err),
            fmt_float(p.budget.phase_err),
            fmt_float(p.budget.leakage_err),
            fmt_float(p.budget.rotation_err),
            fmt_float(p.zeta),
        ]);
    }
    writer.write_csv(
        "sensitivity.csv",
        &[
            "axis_offset",
            "total_err",
            "phase_err",
            "leakage_err",
            "rotation_err",
            "zeta_rad",
        ],
        &rows,
    )?;
    writer.write_json("optimum.json", optimum_json(&result))?;
    Ok(())
}

/// `lindblad`: T₁ threshold scan for the optimized gate.
pub fn cmd_lindblad(config: &ExperimentConfig, out_dir: &Path) -> Result<(), CliError> {
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Validation("sweep: section required (axis t1)".into()))?;
    if sweep.axis != SweepAxis::T1 {
        return Err(CliError::Validation(
            "sweep.axis: the lindblad command scans t1".into(),
        ));
    }
    let mut grid = sweep.values.clone();
    grid.sort_by(f64::total_cmp);
    let sys = build_system(config)?;
    let writer = ReportWriter::new(out_dir, config)?;
    let (spec, result) = optimize_from_config(config, &sys)?;
    let schedule = result
        .best_params
        .schedule(&spec, sys.params.tunable.e_j)?;
    let scan = t1_threshold_scan(&sys, &schedule, &spec.target, &grid)?;

    let mut rows = Vec::new();
    for p in &scan.points {
        rows.push(vec![
            fmt_float(p.t1_us),
            fmt_float(p.one_minus_f),
            fmt_float(p.analytic_ref),
        ]);
    }
    writer.write_csv(
        "lindblad.csv",
        &["t1_us", "one_minus_f", "analytic_ref"],
        &rows,
    )?;
    writer.write_json(
        "lindblad_thresholds.json",
        json!({
            "t1_at_1e3_us": scan.t1_at_1e3_us,
            "t1_at_057e2_us": scan.t1_at_057e2_us,
            "unitary_total_err": result.metrics.error_budget.total_err,
        }),
    )?;
    Ok(())
}

/// `zz-estimate`: perturbative vs simulated conditional-phase rates over a J_C
/// sweep.
pub fn cmd_zz_estimate(config: &ExperimentConfig, out_dir: &Path) -> Result<(), CliError> {
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Validation("sweep: section required (axis j_c)".into()))?;
    if sweep.axis != SweepAxis::JC {
        return Err(CliError::Validation(
            "sweep.axis: the zz-estimate command scans j_c".into(),
        ));
    }
    let gate = config
        .gate
        .as_ref()
        .ok_or_else(|| CliError::Validation("gate: section required".into()))?;
    if gate.tone_count != 1 {
        return Err(CliError::Validation(
            "gate.tone_count: the perturbative estimate is defined for one-tone drive".into(),
        ));
    }
    let writer = ReportWriter::new(out_dir, config)?;

    let mut rows = Vec::new();
    let mut warm: Option<gatecraft_core::PulseParams> = None;
    for &j_c in &sweep.values {
        let mut point_cfg = config.clone();
        point_cfg.circuit.j_c = j_c;
        let sys = build_system(&point_cfg)?;
        let spec = point_cfg.gate_spec(gate)?;
        let result = optimize_pulse_warm(&sys, &spec, gate.budget, warm.as_ref())?;
        warm = Some(result.best_params.clone());

        let schedule = result
            .best_params
            .schedule(&spec, sys.params.tunable.e_j)?;
        let table = interaction_table(&sys, &schedule)?;
        let est = zz_rate_estimate(&table, result.best_params.omega_p[0], spec.t_gate)?;
        // Simulated phase-accumulation rate in the same (phase) convention.
        let zeta_sim_ghz =
            result.metrics.zeta_phase / (std::f64::consts::TAU * spec.t_gate);
        let m0: f64 = est.per_state[0].rate_m0 + est.per_state[3].rate_m0
            - est.per_state[1].rate_m0
            - est.per_state[2].rate_m0;
        let m1 = est.zeta_rate - m0;
        rows.push(vec![
            fmt_float(j_c * 1e3),
            fmt_float(zeta_sim_ghz * 1e3),
            fmt_float(est.zeta_rate * 1e3),
            fmt_float(m0 * 1e3),
            fmt_float(m1 * 1e3),
        ]);
    }
    writer.write_csv(
        "zz_estimate.csv",
        &[
            "j_c_mhz",
            "zeta_rate_sim_mhz",
            "zeta_rate_est_mhz",
            "m0_part",
            "m1_part",
        ],
        &rows,
    )?;
    Ok(())
}
