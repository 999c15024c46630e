use gatecraft_core::evolution::{propagate_comp, propagate_unitary_with, IntegratorConfig};
use gatecraft_core::*;
use std::time::Instant;

fn main() {
    let fixed = QubitParams::new(0.2, 20.0).unwrap();
    let tunable = QubitParams::new(0.2, 15.6).unwrap();
    let p = CircuitParams::new(fixed, tunable, 0.010).unwrap();
    let sys = build_coupled_system(&p, &TruncationConfig::default()).unwrap();
    let env = PulseEnvelope::new(75.0, 10.0).unwrap();
    let seed = sys.dressed_transition((0, 1), (1, 0)).unwrap();

    for amp in [0.5, 2.0, 5.0] {
        let s = DriveSchedule::one_tone(env, ToneSpec::new(amp, seed).unwrap(), 15.6).unwrap();
        let t0 = Instant::now();
        let (_, defect) = propagate_comp(&sys, &s, &IntegratorConfig::fast()).unwrap();
        let dt_fast = t0.elapsed();
        let t0 = Instant::now();
        let (_, defect_d) = propagate_comp(&sys, &s, &IntegratorConfig::default()).unwrap();
        let dt_def = t0.elapsed();
        println!(
            "amp {amp}: comp fast {:.2?} (defect {defect:.2e}), default {:.2?} (defect {defect_d:.2e})",
            dt_fast, dt_def
        );
    }
    let s = DriveSchedule::one_tone(env, ToneSpec::new(2.0, seed).unwrap(), 15.6).unwrap();
    let t0 = Instant::now();
    let prop = propagate_unitary_with(&sys, &s, &IntegratorConfig::default()).unwrap();
    println!(
        "full propagator: {:.2?} (defect {:.2e})",
        t0.elapsed(),
        prop.unitarity_defect
    );
}
