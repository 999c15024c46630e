use gatecraft_core::evolution::GateTarget;
use gatecraft_core::optimizer::{objective_infidelity, seed_frequencies, GateSpec, PulseParams, ResonanceRule};
use gatecraft_core::*;
use rayon::prelude::*;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let j_c: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.013);
    let ratio: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(78.0);
    let amp0: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(3.25);

    let fixed = QubitParams::new(0.2, 20.0).unwrap();
    let tunable = QubitParams::new(0.2, ratio * 0.2).unwrap();
    let p = CircuitParams::new(fixed, tunable, j_c).unwrap();
    let sys = build_coupled_system(&p, &TruncationConfig::default()).unwrap();
    let spec = GateSpec::with_defaults(GateTarget::iswap(), 1, ResonanceRule::SwapResonant);
    let seed = seed_frequencies(&sys, &spec).unwrap()[0];
    println!("seed {seed:.5} GHz, amp0 {amp0}");

    let amps: Vec<f64> = (-2..=2).map(|k| amp0 + 0.25 * k as f64).collect();
    let freqs: Vec<f64> = (-6..=6).map(|k| seed + 2e-3 * k as f64).collect();
    let rows: Vec<(f64, Vec<(f64, f64)>)> = amps
        .par_iter()
        .map(|&a| {
            let vals: Vec<(f64, f64)> = freqs
                .iter()
                .map(|&w| {
                    let params = PulseParams {
                        delta_ej: vec![a],
                        omega_p: vec![w],
                    };
                    (w, objective_infidelity(&sys, &spec, &params).unwrap_or(9.9))
                })
                .collect();
            (a, vals)
        })
        .collect();
    for (a, vals) in rows {
        print!("amp {a:5.2}: ");
        for (_, v) in vals {
            print!("{:9.2e} ", v);
        }
        println!();
    }
}
