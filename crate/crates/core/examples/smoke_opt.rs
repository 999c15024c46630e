use gatecraft_core::evolution::GateTarget;
use gatecraft_core::optimizer::{optimize_pulse, GateSpec, ResonanceRule};
use gatecraft_core::*;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let gate = args.get(1).map(|s| s.as_str()).unwrap_or("cz");
    let j_c: f64 = args
        .get(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.0126);
    let ratio: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(78.0);

    let fixed = QubitParams::new(0.2, 20.0).unwrap();
    let tunable = QubitParams::new(0.2, ratio * 0.2).unwrap();
    let p = CircuitParams::new(fixed, tunable, j_c).unwrap();
    let sys = build_coupled_system(&p, &TruncationConfig::default()).unwrap();

    let spec = match gate {
        "cz" => GateSpec::with_defaults(GateTarget::cz(), 1, ResonanceRule::CzVia1102),
        "iswap" => GateSpec::with_defaults(GateTarget::iswap(), 1, ResonanceRule::SwapResonant),
        "sqrt" => GateSpec::with_defaults(GateTarget::sqrt_iswap(), 1, ResonanceRule::SwapResonant),
        "sqrt2" => GateSpec::with_defaults(GateTarget::sqrt_iswap(), 2, ResonanceRule::SwapResonant),
        other => panic!("unknown gate {other}"),
    };

    let t0 = Instant::now();
    let result = optimize_pulse(&sys, &spec, 400).unwrap();
    println!(
        "gate {gate} at j_c {j_c} ratio {ratio}: {:.1?}, {} evals, converged {}",
        t0.elapsed(),
        result.evaluations,
        result.converged
    );
    println!(
        "  params: amps {:?} freqs {:?}",
        result.best_params.delta_ej, result.best_params.omega_p
    );
    let b = &result.metrics.error_budget;
    println!(
        "  total_err {:.3e}  phase {:.3e}  leak {:.3e}  rot {:.3e}",
        b.total_err, b.phase_err, b.leakage_err, b.rotation_err
    );
    println!(
        "  zeta {:.6} rad  swap_angle {:.6}  eps {:.3e}  gamma {:.3e}",
        result.metrics.zeta_phase,
        result.metrics.swap_angle,
        result.metrics.leakage_angle,
        result.metrics.rotation_angle
    );
}
