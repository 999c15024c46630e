use gatecraft_core::evolution::GateTarget;
use gatecraft_core::optimizer::{seed_frequencies, GateSpec, ResonanceRule};
use gatecraft_core::*;

fn main() {
    let fixed = QubitParams::new(0.2, 20.0).unwrap();
    let trunc = TruncationConfig::default();
    let env = PulseEnvelope::new(75.0, 10.0).unwrap();

    for ratio in [74.0, 78.0] {
        println!("== ratio {ratio}");
        let tunable = QubitParams::new(0.2, ratio * 0.2).unwrap();
        for jm in [8.0f64, 10.0, 11.0, 12.0, 13.0, 14.0, 15.0, 17.0, 20.0] {
            let j_c = jm * 1e-3;
            let p = CircuitParams::new(fixed, tunable, j_c).unwrap();
            let sys = build_coupled_system(&p, &trunc).unwrap();
            let spec =
                GateSpec::with_defaults(GateTarget::iswap(), 1, ResonanceRule::SwapResonant);
            let seed = seed_frequencies(&sys, &spec).unwrap()[0];
            // Amplitude that calibrates a π rotation per the first-harmonic
            // coupling: scan for 2π·g1(amp)·t = π.
            let mut amp_pi = f64::NAN;
            for k in 1..200 {
                let amp = 0.025 * k as f64;
                if amp >= 0.45 * sys.params.tunable.e_j {
                    break;
                }
                let s =
                    DriveSchedule::one_tone(env, ToneSpec::new(amp, seed).unwrap(), ratio * 0.2)
                        .unwrap();
                let table = interaction_table(&sys, &s).unwrap();
                let g1 = table.entry((0, 1), (1, 0)).unwrap().g1.abs();
                if g1 >= 0.5 / 75.0 {
                    amp_pi = amp;
                    break;
                }
            }
            let s = DriveSchedule::one_tone(
                env,
                ToneSpec::new(if amp_pi.is_nan() { 1.0 } else { amp_pi }, seed).unwrap(),
                ratio * 0.2,
            )
            .unwrap();
            let table = interaction_table(&sys, &s).unwrap();
            let est = zz_rate_estimate(&table, seed, 75.0).unwrap();
            let m0: f64 = est.per_state[0].rate_m0 + est.per_state[3].rate_m0
                - est.per_state[1].rate_m0
                - est.per_state[2].rate_m0;
            let m1 = est.zeta_rate - m0;
            // Radians over the plateau-weighted gate time.
            let zeta_rad = std::f64::consts::TAU * est.zeta_rate * 75.0;
            println!(
                "  J_C {jm:5.1} MHz: amp_pi {amp_pi:5.2}  m0 {m0:+.3e}  m1 {m1:+.3e}  zeta_est {zeta_rad:+.3} rad  divergent {}",
                est.divergent()
            );
        }
    }
}
