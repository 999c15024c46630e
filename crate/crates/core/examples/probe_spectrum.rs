use gatecraft_core::*;

fn table2(sys: &CoupledSystem) -> Vec<(&'static str, f64)> {
    let t = |a, b| sys.dressed_transition(a, b).unwrap();
    vec![
        ("00<->11", t((0, 0), (1, 1))),
        ("01<->10", t((0, 1), (1, 0))),
        ("11<->22", t((1, 1), (2, 2))),
        ("12<->21", t((1, 2), (2, 1))),
        ("02<->11", t((0, 2), (1, 1))),
        ("10<->21", t((1, 0), (2, 1))),
        ("11<->20", t((1, 1), (2, 0))),
    ]
}

fn main() {
    let trunc = TruncationConfig::default();
    let fixed = QubitParams::new(0.2, 20.0).unwrap();
    let published = [
        ("00<->11", 10.1058),
        ("01<->10", 0.7923),
        ("11<->22", 9.6635),
        ("12<->21", 0.7959),
        ("02<->11", 1.0151),
        ("10<->21", 9.8863),
        ("11<->20", 0.5734),
    ];
    for ratio in [74.0, 78.0] {
        let tunable = QubitParams::new(0.2, ratio * 0.2).unwrap();
        let p = CircuitParams::new(fixed, tunable, 0.010).unwrap();
        let sys = build_coupled_system(&p, &trunc).unwrap();
        println!("== ratio {ratio}");
        for ((name, freq), (_, pub_freq)) in table2(&sys).iter().zip(published.iter()) {
            println!(
                "  {name}: {:.4}  (published {:.4}, diff {:+.2} MHz)",
                freq,
                pub_freq,
                (freq - pub_freq) * 1e3
            );
        }
        println!(
            "  static ZZ: {:.4} MHz",
            static_zz_rate(&sys).unwrap() * 1e3
        );
        println!(
            "  exchange g: {:.6} GHz",
            effective_exchange_g(&sys).unwrap()
        );
    }
    // g doubling ratio with dressed states
    for ratio in [78.0] {
        let tunable = QubitParams::new(0.2, ratio * 0.2).unwrap();
        let p1 = CircuitParams::new(fixed, tunable, 0.010).unwrap();
        let p2 = CircuitParams::new(fixed, tunable, 0.020).unwrap();
        let g1 = effective_exchange_g(&build_coupled_system(&p1, &trunc).unwrap()).unwrap();
        let g2 = effective_exchange_g(&build_coupled_system(&p2, &trunc).unwrap()).unwrap();
        println!("g(2Jc)/g(Jc) - 2 = {:+.3e}", g2 / g1 - 2.0);
    }
    // ZZ vs ratio scan
    for ratio in [70.0, 72.0, 74.0, 76.0, 78.0, 80.0] {
        let tunable = QubitParams::new(0.2, ratio * 0.2).unwrap();
        let p = CircuitParams::new(fixed, tunable, 0.010).unwrap();
        let sys = build_coupled_system(&p, &trunc).unwrap();
        println!(
            "ratio {ratio}: zz = {:+.4} MHz, w01_T = {:.4}",
            static_zz_rate(&sys).unwrap() * 1e3,
            sys.spectra.1.transitions[0]
        );
    }
}
