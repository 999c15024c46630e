use gatecraft_core::evolution::{extract_error_budget, propagate_comp, GateTarget, IntegratorConfig};
use gatecraft_core::optimizer::{seed_frequencies, GateSpec, PulseParams, ResonanceRule};
use gatecraft_core::*;

fn eval(sys: &CoupledSystem, spec: &GateSpec, amp: f64, freq: f64) -> (f64, f64) {
    let params = PulseParams {
        delta_ej: vec![amp],
        omega_p: vec![freq],
    };
    let s = params.schedule(spec, sys.params.tunable.e_j).unwrap();
    let (comp, _) = propagate_comp(sys, &s, &IntegratorConfig::default()).unwrap();
    let m = extract_error_budget(&comp, &spec.target).unwrap();
    (m.error_budget.total_err, m.zeta_phase)
}

// Crude coordinate-descent polish around a warm start.
fn polish(sys: &CoupledSystem, spec: &GateSpec, mut amp: f64, mut freq: f64) -> (f64, f64, f64, f64) {
    let mut best = eval(sys, spec, amp, freq);
    let mut da = 0.2;
    let mut dw = 2e-3;
    for _ in 0..14 {
        let mut improved = false;
        for (na, nw) in [
            (amp + da, freq),
            (amp - da, freq),
            (amp, freq + dw),
            (amp, freq - dw),
        ] {
            if na <= 0.0 {
                continue;
            }
            let v = eval(sys, spec, na, nw);
            if v.0 < best.0 {
                best = v;
                amp = na;
                freq = nw;
                improved = true;
            }
        }
        if !improved {
            da *= 0.4;
            dw *= 0.4;
        }
    }
    (amp, freq, best.0, best.1)
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let ratio: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(78.0);
    let fixed = QubitParams::new(0.2, 20.0).unwrap();
    let tunable = QubitParams::new(0.2, ratio * 0.2).unwrap();
    let trunc = TruncationConfig::default();
    let spec = GateSpec::with_defaults(GateTarget::iswap(), 1, ResonanceRule::SwapResonant);

    let mut amp = 2.0 * 11.0 / 8.0;
    let mut dfreq = 3e-3;
    for jm in [8.0f64, 9.0, 10.0, 11.0, 12.0, 13.0, 14.0, 15.0] {
        let p = CircuitParams::new(fixed, tunable, jm * 1e-3).unwrap();
        let sys = build_coupled_system(&p, &trunc).unwrap();
        let seed = seed_frequencies(&sys, &spec).unwrap()[0];
        let (a, w, err, zeta) = polish(&sys, &spec, amp, seed + dfreq);
        println!(
            "ratio {ratio} J_C {jm:5.1}: amp {a:5.3} freq-seed {:+7.4} MHz  err {err:9.3e}  zeta {zeta:+8.4}",
            (w - seed) * 1e3
        );
        amp = a * (jm / (jm + 1.0));
        dfreq = w - seed;
    }
}
