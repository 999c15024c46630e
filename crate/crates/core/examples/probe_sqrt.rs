use gatecraft_core::evolution::GateTarget;
use gatecraft_core::optimizer::{optimize_pulse_warm, GateSpec, PulseParams, ResonanceRule};
use gatecraft_core::*;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let tones: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let ratio: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(78.0);

    let fixed = QubitParams::new(0.2, 20.0).unwrap();
    let tunable = QubitParams::new(0.2, ratio * 0.2).unwrap();
    let trunc = TruncationConfig::default();
    let spec = GateSpec::with_defaults(GateTarget::sqrt_iswap(), tones, ResonanceRule::SwapResonant);

    let hi = args.get(3).map(|s| s == "hi").unwrap_or(false);
    let grid: Vec<f64> = if hi {
        vec![27.5, 30.0, 32.5, 35.0, 37.5, 40.0, 42.5, 45.0]
    } else {
        vec![10.0, 12.5, 15.0, 17.5, 20.0, 22.5, 25.0, 27.5, 30.0]
    };
    let mut warm: Option<PulseParams> = None;
    for jm in grid {
        let p = CircuitParams::new(fixed, tunable, jm * 1e-3).unwrap();
        let sys = build_coupled_system(&p, &trunc).unwrap();
        let r = optimize_pulse_warm(&sys, &spec, 400, warm.as_ref()).unwrap();
        warm = Some(r.best_params.clone());
        let b = &r.metrics.error_budget;
        println!(
            "tones {tones} J_C {jm:5.1}: amps {:?} freqs {:?} err {:.3e} phase {:.3e} leak {:.3e} rot {:.3e} zeta {:+.4} swap_angle {:.4}",
            r.best_params
                .delta_ej
                .iter()
                .map(|a| (a * 1e3).round() / 1e3)
                .collect::<Vec<_>>(),
            r.best_params
                .omega_p
                .iter()
                .map(|w| (w * 1e5).round() / 1e5)
                .collect::<Vec<_>>(),
            b.total_err,
            b.phase_err,
            b.leakage_err,
            b.rotation_err,
            r.metrics.zeta_phase,
            r.metrics.swap_angle,
        );
    }
}
