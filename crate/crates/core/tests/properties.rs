//! Randomized invariants over the pure analytic pieces.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

use gatecraft_core::evolution::{gate_fidelity, virtual_z_reduce, GateTarget};
use gatecraft_core::{local_equivalence_reduce, rabi_offres_unitary, swap_condition_lhs};

fn zgate(a: f64, b: f64) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(4, 4);
    let ph = [a + b, a - b, -a + b, -a - b];
    for (i, p) in ph.iter().enumerate() {
        m[(i, i)] = C64::from_polar(1.0, *p);
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rabi_unitary_is_unitary_with_opposite_phases(
        g in 0.0f64..0.05,
        delta in -0.05f64..0.05,
        t in 1.0f64..200.0,
    ) {
        let u = rabi_offres_unitary(g, delta, t);
        let gram = u.adjoint() * &u;
        for r in 0..2 {
            for c in 0..2 {
                let expect = if r == c { 1.0 } else { 0.0 };
                prop_assert!((gram[(r, c)] - C64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
        prop_assert!((u[(0, 0)].arg() + u[(1, 1)].arg()).abs() < 1e-12);
        // Off-diagonal magnitude equals the swap-condition left-hand side.
        let lhs = swap_condition_lhs(g, delta, t);
        prop_assert!((u[(0, 1)].norm() - lhs.abs()).abs() < 1e-12);
    }

    #[test]
    fn local_reduction_gamma_vanishes_only_on_resonance_or_at_extremes(
        g in 1e-4f64..0.05,
        delta in 1e-4f64..0.05,
        t in 1.0f64..200.0,
    ) {
        let u = rabi_offres_unitary(g, delta, t);
        let (_, gamma) = local_equivalence_reduce(&u).unwrap();
        let omega = (g * g + delta * delta).sqrt();
        let s = (std::f64::consts::PI * omega * t).sin();
        // γ = 0 requires the detuned sine term to vanish.
        if gamma.abs() < 1e-12 {
            prop_assert!(s.abs() < 1e-9 || u[(0, 0)].norm() < 1e-12);
        }
    }

    #[test]
    fn virtual_z_fidelity_is_gauge_invariant(
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
        c in -3.0f64..3.0,
        d in -3.0f64..3.0,
        dphi in -0.2f64..0.2,
    ) {
        for target in [GateTarget::cz(), GateTarget::iswap(), GateTarget::sqrt_iswap()] {
            let mut u = target.ideal();
            u[(3, 3)] *= C64::from_polar(1.0, dphi);
            let (_, f0) = virtual_z_reduce(&u, &target);
            let gauged = zgate(a, b) * &u * zgate(c, d);
            let (_, f1) = virtual_z_reduce(&gauged, &target);
            prop_assert!((f0 - f1).abs() < 1e-10, "{:?}: {f0} vs {f1}", target.kind);
        }
    }

    #[test]
    fn fidelity_is_bounded(
        phases in prop::array::uniform4(-3.0f64..3.0),
    ) {
        let mut u = GateTarget::cz().ideal();
        for (k, p) in phases.iter().enumerate() {
            u[(k, k)] *= C64::from_polar(1.0, *p);
        }
        let f = gate_fidelity(&u, &GateTarget::cz());
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f));
    }
}
