use gatecraft_core::evolution::{extract_error_budget, propagate_comp, GateTarget, IntegratorConfig};
use gatecraft_core::optimizer::{seed_frequencies, GateSpec, PulseParams, ResonanceRule};
use gatecraft_core::*;
use rayon::prelude::*;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let jm: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(10.0);
    let split_sign: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1.0);

    let fixed = QubitParams::new(0.2, 20.0).unwrap();
    let tunable = QubitParams::new(0.2, 15.6).unwrap();
    let p = CircuitParams::new(fixed, tunable, jm * 1e-3).unwrap();
    let sys = build_coupled_system(&p, &TruncationConfig::default()).unwrap();
    let spec = GateSpec::with_defaults(GateTarget::sqrt_iswap(), 2, ResonanceRule::SwapResonant);
    let seed = seed_frequencies(&sys, &spec).unwrap()[0];
    let freqs = vec![seed, seed + split_sign / 75.0];
    println!("J_C {jm} MHz, freqs {:?}", freqs);

    let amps: Vec<f64> = (1..=14).map(|k| 0.5 * k as f64).collect();
    let rows: Vec<(f64, Vec<(f64, f64, f64)>)> = amps
        .par_iter()
        .map(|&a1| {
            let vals: Vec<(f64, f64, f64)> = amps
                .iter()
                .map(|&a2| {
                    let params = PulseParams {
                        delta_ej: vec![a1, a2],
                        omega_p: freqs.clone(),
                    };
                    match params
                        .schedule(&spec, 15.6)
                        .and_then(|s| propagate_comp(&sys, &s, &IntegratorConfig::fast()))
                        .and_then(|(comp, _)| extract_error_budget(&comp, &spec.target))
                    {
                        Ok(m) => (a2, m.error_budget.total_err, m.zeta_phase),
                        Err(_) => (a2, f64::NAN, f64::NAN),
                    }
                })
                .collect();
            (a1, vals)
        })
        .collect();
    println!("total_err grid (rows a1, cols a2 = 0.5..7.0):");
    for (a1, vals) in &rows {
        print!("a1 {a1:4.1}: ");
        for (_, e, _) in vals {
            print!("{:8.1e} ", e);
        }
        println!();
    }
    let mut best = (0.0, 0.0, f64::INFINITY, 0.0);
    for (a1, vals) in &rows {
        for (a2, e, z) in vals {
            if *e < best.2 {
                best = (*a1, *a2, *e, *z);
            }
        }
    }
    println!(
        "best: a1 {} a2 {} err {:.3e} zeta {:+.4}",
        best.0, best.1, best.2, best.3
    );
}
