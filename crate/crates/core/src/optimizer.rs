//! Pulse-parameter search: parametric-resonance frequency seeding, the
//! coherent-infidelity objective, grid multi-start Nelder-Mead refinement, and
//! one-axis sensitivity scans around an optimized point.

use rayon::prelude::*;

use crate::circuit::{build_coupled_system, CircuitParams, CoupledSystem};
use crate::drive::{DriveSchedule, PulseEnvelope, ToneSpec};
use crate::error::{CoreError, Result};
use crate::evolution::{
    conditional_zz_phase, extract_error_budget, propagate_comp, virtual_z_reduce, ErrorBudget,
    GateMetrics, GateTarget, IntegratorConfig,
};

/// Parametric-resonance condition used to seed the modulation frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResonanceRule {
    /// ω_p ≈ E(11̄) − E(02̄); the CZ condition ω_p ≈ Δ − η̄_T.
    CzVia1102,
    /// ω_p ≈ E(20̄) − E(11̄); the CZ condition ω_p ≈ Δ + η_F.
    CzVia2011,
    /// ω_p ≈ E(10̄) − E(01̄); the SWAP-family condition ω_p ≈ Δ.
    SwapResonant,
}

/// Everything needed to optimize one gate: target, tone structure, and timing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateSpec {
    pub target: GateTarget,
    pub tone_count: usize,
    pub t_gate: f64,
    pub t_rise: f64,
    pub resonance_rule: ResonanceRule,
}

impl GateSpec {
    pub fn new(
        target: GateTarget,
        tone_count: usize,
        t_gate: f64,
        t_rise: f64,
        resonance_rule: ResonanceRule,
    ) -> Result<Self> {
        let spec = Self {
            target,
            tone_count,
            t_gate,
            t_rise,
            resonance_rule,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.tone_count == 0 || self.tone_count > 2 {
            return Err(CoreError::InvalidParameter(format!(
                "tone_count must be 1 or 2, got {}",
                self.tone_count
            )));
        }
        PulseEnvelope::new(self.t_gate, self.t_rise)?;
        let cz_rule = matches!(
            self.resonance_rule,
            ResonanceRule::CzVia1102 | ResonanceRule::CzVia2011
        );
        if cz_rule && self.target.theta != 0.0 {
            return Err(CoreError::InvalidParameter(
                "CZ resonance rules require a θ = 0 target".into(),
            ));
        }
        if !cz_rule && self.target.theta <= 0.0 {
            return Err(CoreError::InvalidParameter(
                "the SWAP resonance rule requires θ > 0".into(),
            ));
        }
        Ok(())
    }

    pub fn envelope(&self) -> PulseEnvelope {
        PulseEnvelope::new(self.t_gate, self.t_rise).expect("validated")
    }

    /// Defaults used throughout: 75 ns gate, 10 ns ramps.
    pub fn with_defaults(target: GateTarget, tone_count: usize, rule: ResonanceRule) -> Self {
        Self {
            target,
            tone_count,
            t_gate: 75.0,
            t_rise: 10.0,
            resonance_rule: rule,
        }
    }
}

/// Per-tone pulse parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseParams {
    pub delta_ej: Vec<f64>,
    pub omega_p: Vec<f64>,
}

impl PulseParams {
    pub fn schedule(&self, spec: &GateSpec, ej_static: f64) -> Result<DriveSchedule> {
        let tones: Result<Vec<ToneSpec>> = self
            .delta_ej
            .iter()
            .zip(self.omega_p.iter())
            .map(|(&a, &w)| ToneSpec::new(a, w))
            .collect();
        DriveSchedule::new(spec.envelope(), tones?, ej_static)
    }
}

/// Outcome of a pulse optimization.
#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub best_params: PulseParams,
    pub metrics: GateMetrics,
    pub evaluations: usize,
    pub converged: bool,
}

/// Seeds the modulation frequency from the dressed parametric-resonance
/// condition; two-tone schedules split the second tone up by 1/t_gate.
pub fn seed_frequencies(sys: &CoupledSystem, spec: &GateSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let base = match spec.resonance_rule {
        ResonanceRule::SwapResonant => sys.dressed_transition((0, 1), (1, 0))?,
        ResonanceRule::CzVia1102 => sys.dressed_transition((0, 2), (1, 1))?,
        ResonanceRule::CzVia2011 => sys.dressed_transition((1, 1), (2, 0))?,
    };
    if base <= 0.0 {
        return Err(CoreError::InvalidParameter(format!(
            "resonance seed {base} GHz is not positive for this operating point"
        )));
    }
    Ok(match spec.tone_count {
        1 => vec![base],
        _ => vec![base, base + 1.0 / spec.t_gate],
    })
}

fn amplitude_bound(sys: &CoupledSystem) -> f64 {
    0.5 * sys.params.tunable.e_j
}

fn check_bounds(sys: &CoupledSystem, seeds: &[f64], params: &PulseParams) -> Result<()> {
    let amp_max = amplitude_bound(sys);
    for &a in &params.delta_ej {
        if !(0.0..=amp_max).contains(&a) {
            return Err(CoreError::InvalidParameter(format!(
                "delta_ej {a} outside [0, {amp_max}]"
            )));
        }
    }
    for (&w, &seed) in params.omega_p.iter().zip(seeds.iter()) {
        if (w - seed).abs() > 0.1 {
            return Err(CoreError::InvalidParameter(format!(
                "omega_p {w} further than 0.1 GHz from its seed {seed}"
            )));
        }
    }
    Ok(())
}

/// Coherent infidelity 1 − F of the pulse described by `params`. Deterministic;
/// propagation runs at the default tolerances on the computational columns.
pub fn objective_infidelity(
    sys: &CoupledSystem,
    spec: &GateSpec,
    params: &PulseParams,
) -> Result<f64> {
    let seeds = seed_frequencies(sys, spec)?;
    check_bounds(sys, &seeds, params)?;
    let s = params.schedule(spec, sys.params.tunable.e_j)?;
    let (comp, _) = propagate_comp(sys, &s, &IntegratorConfig::default())?;
    let (_, fidelity) = virtual_z_reduce(&comp, &spec.target);
    Ok(1.0 - fidelity)
}

/// Objective value the optimizer assigns to infeasible evaluations.
const SENTINEL: f64 = 10.0;

struct Objective<'a> {
    sys: &'a CoupledSystem,
    spec: &'a GateSpec,
    seeds: Vec<f64>,
    /// Frequencies frozen (two-tone mode optimizes amplitudes only).
    freqs_fixed: bool,
}

impl Objective<'_> {
    fn params_from(&self, x: &[f64]) -> PulseParams {
        if self.freqs_fixed {
            PulseParams {
                delta_ej: x.to_vec(),
                omega_p: self.seeds.clone(),
            }
        } else {
            PulseParams {
                delta_ej: vec![x[0]],
                omega_p: vec![x[1]],
            }
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let params = self.params_from(x);
        objective_infidelity(self.sys, self.spec, &params).unwrap_or(SENTINEL)
    }
}

/// Nelder-Mead with component-wise bound clamping. Deterministic; terminates
/// when the simplex collapses below `param_tol` in every scaled coordinate or
/// the evaluation budget is spent.
pub(crate) fn nelder_mead(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    x0: &[f64],
    steps: &[f64],
    bounds: &[(f64, f64)],
    param_tol: f64,
    budget: &mut usize,
) -> (Vec<f64>, f64, bool) {
    let n = x0.len();
    let clamp = |x: &mut Vec<f64>| {
        for (xi, &(lo, hi)) in x.iter_mut().zip(bounds.iter()) {
            *xi = xi.clamp(lo, hi);
        }
    };
    let spend = |x: &Vec<f64>, budget: &mut usize| -> Option<f64> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        Some(f(x))
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    {
        let mut x = x0.to_vec();
        clamp(&mut x);
        let fx = match spend(&x, budget) {
            Some(v) => v,
            None => return (x0.to_vec(), f64::INFINITY, false),
        };
        simplex.push((x, fx));
    }
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += steps[i];
        clamp(&mut x);
        if (x[i] - x0[i]).abs() < 1e-300 {
            x[i] = x0[i] - steps[i];
            clamp(&mut x);
        }
        let fx = match spend(&x, budget) {
            Some(v) => v,
            None => return (simplex[0].0.clone(), simplex[0].1, false),
        };
        simplex.push((x, fx));
    }

    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        // Convergence: simplex extent below tolerance in scaled coordinates.
        let mut extent: f64 = 0.0;
        for v in &simplex[1..] {
            for i in 0..n {
                extent = extent.max((v.0[i] - simplex[0].0[i]).abs() / steps[i].abs().max(1e-300));
            }
        }
        if extent < param_tol {
            return (simplex[0].0.clone(), simplex[0].1, true);
        }

        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for i in 0..n {
                centroid[i] += v.0[i] / n as f64;
            }
        }
        let worst = simplex[n].clone();

        let mut reflected: Vec<f64> = (0..n)
            .map(|i| centroid[i] + alpha * (centroid[i] - worst.0[i]))
            .collect();
        clamp(&mut reflected);
        let fr = match spend(&reflected, budget) {
            Some(v) => v,
            None => return (simplex[0].0.clone(), simplex[0].1, false),
        };

        if fr < simplex[0].1 {
            let mut expanded: Vec<f64> = (0..n)
                .map(|i| centroid[i] + gamma * (reflected[i] - centroid[i]))
                .collect();
            clamp(&mut expanded);
            let fe = match spend(&expanded, budget) {
                Some(v) => v,
                None => return (reflected, fr, false),
            };
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        // Contraction (outside when the reflection helped, inside otherwise).
        let toward = if fr < worst.1 { &reflected } else { &worst.0 };
        let mut contracted: Vec<f64> = (0..n)
            .map(|i| centroid[i] + rho * (toward[i] - centroid[i]))
            .collect();
        clamp(&mut contracted);
        let fc = match spend(&contracted, budget) {
            Some(v) => v,
            None => return (simplex[0].0.clone(), simplex[0].1, false),
        };
        if fc < worst.1.min(fr) {
            simplex[n] = (contracted, fc);
            continue;
        }
        // Shrink toward the best vertex.
        let best = simplex[0].0.clone();
        for v in simplex.iter_mut().skip(1) {
            for i in 0..n {
                v.0[i] = best[i] + sigma * (v.0[i] - best[i]);
            }
            let fx = match spend(&v.0, budget) {
                Some(val) => val,
                None => return (simplex[0].0.clone(), simplex[0].1, false),
            };
            v.1 = fx;
        }
    }
}

/// Optimizes the pulse parameters for `spec` by a fixed coarse grid multi-start
/// followed by Nelder-Mead refinement from the best grid point.
///
/// One-tone mode searches (δE_J, ω_p); two-tone mode searches the two
/// amplitudes with both frequencies frozen at their seeded values.
pub fn optimize_pulse(
    sys: &CoupledSystem,
    spec: &GateSpec,
    budget: usize,
) -> Result<OptimizationResult> {
    optimize_pulse_warm(sys, spec, budget, None)
}

/// As [`optimize_pulse`], with an optional extra refinement start (e.g. the
/// optimum of a neighboring sweep point). The warm start never replaces the
/// grid multi-start, it competes with it.
pub fn optimize_pulse_warm(
    sys: &CoupledSystem,
    spec: &GateSpec,
    budget: usize,
    warm: Option<&PulseParams>,
) -> Result<OptimizationResult> {
    if budget < 100 {
        return Err(CoreError::InvalidParameter(format!(
            "optimization budget must be at least 100 evaluations, got {budget}"
        )));
    }
    spec.validate()?;
    let seeds = seed_frequencies(sys, spec)?;
    let ej = sys.params.tunable.e_j;
    let amp_max = amplitude_bound(sys);
    let obj = Objective {
        sys,
        spec,
        seeds: seeds.clone(),
        freqs_fixed: spec.tone_count == 2,
    };

    // 5 log-spaced amplitudes in [0.05, 0.4]·Ē_J,T.
    let amps: Vec<f64> = (0..5)
        .map(|k| 0.05 * ej * (0.4f64 / 0.05).powf(k as f64 / 4.0))
        .collect();
    // 5 frequencies in seed ± 3/t_gate.
    let freq_span = 3.0 / spec.t_gate;
    let freqs: Vec<f64> = (0..5)
        .map(|k| seeds[0] - freq_span + 2.0 * freq_span * k as f64 / 4.0)
        .collect();

    let grid: Vec<Vec<f64>> = if spec.tone_count == 1 {
        amps.iter()
            .flat_map(|&a| freqs.iter().map(move |&w| vec![a, w]))
            .collect()
    } else {
        amps.iter()
            .flat_map(|&a1| amps.iter().map(move |&a2| vec![a1, a2]))
            .collect()
    };

    let grid_vals: Vec<f64> = grid.par_iter().map(|x| obj.eval(x)).collect();
    let mut evaluations = grid.len();

    let (steps, bounds): (Vec<f64>, Vec<(f64, f64)>) = if spec.tone_count == 1 {
        (
            vec![0.05 * ej, 0.5 / spec.t_gate],
            vec![(0.0, amp_max), (seeds[0] - 0.1, seeds[0] + 0.1)],
        )
    } else {
        (
            vec![0.05 * ej, 0.05 * ej],
            vec![(0.0, amp_max), (0.0, amp_max)],
        )
    };

    // Refinement starts: the warm start (if any) plus the best grid points.
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| grid_vals[a].total_cmp(&grid_vals[b]));
    let mut starts: Vec<Vec<f64>> = Vec::new();
    if let Some(w) = warm {
        let x = if spec.tone_count == 1 {
            vec![w.delta_ej[0], w.omega_p[0]]
        } else {
            w.delta_ej.clone()
        };
        starts.push(x);
    }
    for &idx in order.iter().take(3) {
        starts.push(grid[idx].clone());
    }

    let best_grid_val = grid_vals[order[0]];
    let mut best_x = grid[order[0]].clone();
    let mut best_f = best_grid_val;
    let mut converged = false;
    let mut remaining = budget.saturating_sub(evaluations);
    // Hold back part of the budget for a restart from the overall winner; a
    // fresh simplex reliably escapes premature contractions.
    let restart_reserve = remaining / 4;
    let mut remaining = remaining - restart_reserve;
    let f = |x: &[f64]| obj.eval(x);
    let n_starts = starts.len();
    for (k, x0) in starts.into_iter().enumerate() {
        // Leave the later starts enough budget to be useful.
        let mut slice = if k + 1 == n_starts {
            remaining
        } else {
            remaining / (n_starts - k)
        };
        let before = slice;
        let (x, fx, conv) = nelder_mead(&f, &x0, &steps, &bounds, 1e-12, &mut slice);
        let used = before - slice;
        remaining -= used;
        evaluations += used;
        if fx <= best_f {
            best_f = fx;
            best_x = x;
            converged = conv;
        }
        if remaining == 0 {
            break;
        }
    }
    {
        let mut slice = remaining + restart_reserve;
        let before = slice;
        let restart_steps: Vec<f64> = steps.iter().map(|s| s / 4.0).collect();
        let (x, fx, conv) =
            nelder_mead(&f, &best_x, &restart_steps, &bounds, 1e-12, &mut slice);
        evaluations += before - slice;
        if fx <= best_f {
            best_f = fx;
            best_x = x;
            converged = conv;
        }
    }
    let _ = best_f;

    let best_params = obj.params_from(&best_x);
    let schedule = best_params.schedule(spec, ej)?;
    let (comp, _) = propagate_comp(sys, &schedule, &IntegratorConfig::default())?;
    let metrics = extract_error_budget(&comp, &spec.target)?;

    Ok(OptimizationResult {
        best_params,
        metrics,
        evaluations,
        converged,
    })
}

/// Axis of a one-parameter sensitivity scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SensitivityAxis {
    /// Perturb the first tone's modulation amplitude.
    DeltaEj,
    /// Perturb the coupling constant, rebuilding the system per point.
    Jc,
}

/// One point of a sensitivity scan.
#[derive(Debug, Clone)]
pub struct SensitivityPoint {
    pub offset: f64,
    pub total_err: f64,
    pub budget: ErrorBudget,
    pub zeta: f64,
}

/// Re-evaluates the optimized pulse under perturbations of one axis, all other
/// parameters frozen.
pub fn sensitivity_scan(
    sys: &CoupledSystem,
    spec: &GateSpec,
    result: &OptimizationResult,
    axis: SensitivityAxis,
    range: (f64, f64),
    steps: usize,
) -> Result<Vec<SensitivityPoint>> {
    if steps < 2 {
        return Err(CoreError::InvalidParameter(
            "sensitivity scan needs at least 2 steps".into(),
        ));
    }
    let offsets: Vec<f64> = (0..steps)
        .map(|k| range.0 + (range.1 - range.0) * k as f64 / (steps - 1) as f64)
        .collect();
    let points: Vec<Result<SensitivityPoint>> = offsets
        .par_iter()
        .map(|&offset| {
            let mut params = result.best_params.clone();
            let system_storage;
            let system: &CoupledSystem = match axis {
                SensitivityAxis::DeltaEj => {
                    params.delta_ej[0] = (params.delta_ej[0] + offset).max(0.0);
                    sys
                }
                SensitivityAxis::Jc => {
                    let p = CircuitParams::new(
                        sys.params.fixed,
                        sys.params.tunable,
                        (sys.params.j_c + offset).max(0.0),
                    )?;
                    system_storage = build_coupled_system(&p, &sys.trunc)?;
                    &system_storage
                }
            };
            let schedule = params.schedule(spec, sys.params.tunable.e_j)?;
            let (comp, _) = propagate_comp(system, &schedule, &IntegratorConfig::default())?;
            let metrics = extract_error_budget(&comp, &spec.target)?;
            let zeta = conditional_zz_phase(&comp, &spec.target)?;
            Ok(SensitivityPoint {
                offset,
                total_err: metrics.error_budget.total_err,
                budget: metrics.error_budget,
                zeta,
            })
        })
        .collect();
    points.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{CircuitParams, QubitParams, TruncationConfig};

    fn system(j_c: f64, ratio: f64) -> CoupledSystem {
        let fixed = QubitParams::new(0.2, 20.0).unwrap();
        let tunable = QubitParams::new(0.2, ratio * 0.2).unwrap();
        let p = CircuitParams::new(fixed, tunable, j_c).unwrap();
        build_coupled_system(&p, &TruncationConfig::default()).unwrap()
    }

    #[test]
    fn swap_seed_matches_published_transition() {
        // SWAP seed at the Table-II operating point (ratio 74).
        let sys = system(0.010, 74.0);
        let spec = GateSpec::with_defaults(GateTarget::iswap(), 1, ResonanceRule::SwapResonant);
        let seeds = seed_frequencies(&sys, &spec).unwrap();
        assert!((seeds[0] - 0.7923).abs() < 1e-3, "seed {}", seeds[0]);
    }

    #[test]
    fn cz_seed_matches_published_transition() {
        let sys = system(0.010, 74.0);
        let spec = GateSpec::with_defaults(GateTarget::cz(), 1, ResonanceRule::CzVia1102);
        let seeds = seed_frequencies(&sys, &spec).unwrap();
        assert!((seeds[0] - 1.0151).abs() < 1e-3, "seed {}", seeds[0]);
    }

    #[test]
    fn decoupled_swap_seed_is_bare_detuning() {
        let sys = system(0.0, 78.0);
        let spec = GateSpec::with_defaults(GateTarget::iswap(), 1, ResonanceRule::SwapResonant);
        let seeds = seed_frequencies(&sys, &spec).unwrap();
        assert!((seeds[0] - 0.662).abs() < 1e-3, "seed {}", seeds[0]);
    }

    #[test]
    fn two_tone_seed_splitting() {
        let sys = system(0.010, 78.0);
        let spec =
            GateSpec::with_defaults(GateTarget::sqrt_iswap(), 2, ResonanceRule::SwapResonant);
        let seeds = seed_frequencies(&sys, &spec).unwrap();
        assert_eq!(seeds.len(), 2);
        assert!((seeds[1] - seeds[0] - 1.0 / 75.0).abs() < 1e-12);
    }

    #[test]
    fn rule_target_compatibility() {
        assert!(GateSpec::new(
            GateTarget::iswap(),
            1,
            75.0,
            10.0,
            ResonanceRule::CzVia1102
        )
        .is_err());
        assert!(GateSpec::new(
            GateTarget::cz(),
            1,
            75.0,
            10.0,
            ResonanceRule::SwapResonant
        )
        .is_err());
        assert!(GateSpec::new(GateTarget::cz(), 3, 75.0, 10.0, ResonanceRule::CzVia1102).is_err());
    }

    #[test]
    fn zero_amplitude_swap_objective_is_large() {
        let sys = system(0.010, 78.0);
        let spec = GateSpec::with_defaults(GateTarget::iswap(), 1, ResonanceRule::SwapResonant);
        let seeds = seed_frequencies(&sys, &spec).unwrap();
        let params = PulseParams {
            delta_ej: vec![0.0],
            omega_p: seeds,
        };
        let inf = objective_infidelity(&sys, &spec, &params).unwrap();
        assert!(inf >= 0.2, "1 − F = {inf}");
    }

    #[test]
    fn out_of_bounds_params_rejected() {
        let sys = system(0.010, 78.0);
        let spec = GateSpec::with_defaults(GateTarget::iswap(), 1, ResonanceRule::SwapResonant);
        let seeds = seed_frequencies(&sys, &spec).unwrap();
        let too_big = PulseParams {
            delta_ej: vec![0.6 * sys.params.tunable.e_j],
            omega_p: seeds.clone(),
        };
        assert!(objective_infidelity(&sys, &spec, &too_big).is_err());
        let detuned = PulseParams {
            delta_ej: vec![0.5],
            omega_p: vec![seeds[0] + 0.2],
        };
        assert!(objective_infidelity(&sys, &spec, &detuned).is_err());
    }

    #[test]
    fn budget_precondition() {
        let sys = system(0.010, 78.0);
        let spec = GateSpec::with_defaults(GateTarget::cz(), 1, ResonanceRule::CzVia1102);
        assert!(optimize_pulse(&sys, &spec, 99).is_err());
    }

    #[test]
    fn nelder_mead_converges_on_quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 0.3) * (x[0] - 0.3) + 2.0 * (x[1] + 0.7) * (x[1] + 0.7);
        let mut budget = 10_000;
        let (x, fx, converged) = nelder_mead(
            &f,
            &[1.0, 1.0],
            &[0.5, 0.5],
            &[(-5.0, 5.0), (-5.0, 5.0)],
            1e-12,
            &mut budget,
        );
        assert!(converged);
        assert!((x[0] - 0.3).abs() < 1e-10, "x0 = {}", x[0]);
        assert!((x[1] + 0.7).abs() < 1e-10, "x1 = {}", x[1]);
        assert!(fx < 1e-18);
    }

    #[test]
    fn nelder_mead_respects_bounds() {
        // Unconstrained optimum at (−1, −1); bounds force (0, 0).
        let f = |x: &[f64]| (x[0] + 1.0).powi(2) + (x[1] + 1.0).powi(2);
        let mut budget = 5_000;
        let (x, _, _) = nelder_mead(
            &f,
            &[0.5, 0.5],
            &[0.2, 0.2],
            &[(0.0, 2.0), (0.0, 2.0)],
            1e-10,
            &mut budget,
        );
        assert!(x[0] >= 0.0 && x[1] >= 0.0);
        assert!(x[0] < 1e-6 && x[1] < 1e-6);
    }
}
