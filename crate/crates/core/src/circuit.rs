//! Charge-basis qubit Hamiltonians and the coupled two-qubit static system.
//!
//! Single qubits are diagonalized exactly in the charge basis n ∈ [−N, N]. The
//! coupled system is expressed in the tensor product of the single-qubit
//! eigenbases evaluated at the static Josephson energies, where the drive enters
//! linearly through the operator −cos(φ̂_T).

use nalgebra::{DMatrix, DVector};

use crate::error::{CoreError, Result};

/// Charging and Josephson energies of one qubit, as linear frequencies (GHz).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitParams {
    /// Charging energy E_C/h in GHz.
    pub e_c: f64,
    /// Josephson energy E_J/h in GHz. For the tunable qubit this is the static
    /// value about which the drive modulates.
    pub e_j: f64,
}

impl QubitParams {
    pub fn new(e_c: f64, e_j: f64) -> Result<Self> {
        let q = Self { e_c, e_j };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.e_c > 0.0) || !self.e_c.is_finite() {
            return Err(CoreError::InvalidParameter(format!(
                "e_c must be positive and finite, got {}",
                self.e_c
            )));
        }
        if !(self.e_j > 0.0) || !self.e_j.is_finite() {
            return Err(CoreError::InvalidParameter(format!(
                "e_j must be positive and finite, got {}",
                self.e_j
            )));
        }
        Ok(())
    }

    /// Ratio E_J/E_C; the transmon regime needs roughly ≥ 20.
    pub fn ej_ec_ratio(&self) -> f64 {
        self.e_j / self.e_c
    }

    /// Non-fatal diagnostics (transmon-regime check).
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.ej_ec_ratio() < 20.0 {
            w.push(format!(
                "E_J/E_C = {:.2} is below the transmon regime (≥ 20); charge dispersion may be large",
                self.ej_ec_ratio()
            ));
        }
        w
    }
}

/// Full circuit: fixed qubit, tunable qubit at its static point, and the charge
/// coupling J_C/h in GHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitParams {
    pub fixed: QubitParams,
    pub tunable: QubitParams,
    pub j_c: f64,
}

impl CircuitParams {
    pub fn new(fixed: QubitParams, tunable: QubitParams, j_c: f64) -> Result<Self> {
        let p = Self {
            fixed,
            tunable,
            j_c,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.fixed.validate()?;
        self.tunable.validate()?;
        if self.j_c < 0.0 || !self.j_c.is_finite() {
            return Err(CoreError::InvalidParameter(format!(
                "j_c must be non-negative and finite, got {}",
                self.j_c
            )));
        }
        Ok(())
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut w = self.fixed.warnings();
        w.extend(self.tunable.warnings());
        if self.j_c > 0.1 {
            w.push(format!(
                "j_c = {} GHz is not small against the qubit transition frequencies",
                self.j_c
            ));
        }
        w
    }
}

/// Basis truncation: charge states n ∈ [−N, N] and the number of eigenlevels
/// retained per qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationConfig {
    pub charge_cutoff: usize,
    pub levels_per_qubit: usize,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self {
            charge_cutoff: 20,
            levels_per_qubit: 6,
        }
    }
}

impl TruncationConfig {
    pub fn new(charge_cutoff: usize, levels_per_qubit: usize) -> Result<Self> {
        let t = Self {
            charge_cutoff,
            levels_per_qubit,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels_per_qubit < 3 {
            return Err(CoreError::InvalidParameter(format!(
                "levels_per_qubit must be ≥ 3 to resolve two-excitation leakage, got {}",
                self.levels_per_qubit
            )));
        }
        if self.charge_cutoff < 3 * self.levels_per_qubit {
            return Err(CoreError::InvalidParameter(format!(
                "charge_cutoff {} too small for {} levels (need ≥ 3 × levels)",
                self.charge_cutoff, self.levels_per_qubit
            )));
        }
        Ok(())
    }

    pub fn charge_dim(&self) -> usize {
        2 * self.charge_cutoff + 1
    }
}

/// Ground-referenced eigenfrequencies and derived ladder quantities of one qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    /// Eigenfrequencies in GHz with the ground state subtracted; strictly increasing.
    pub levels: Vec<f64>,
    /// Nearest-neighbor transition frequencies ω_{i,i+1}.
    pub transitions: Vec<f64>,
    /// Anharmonicities η_i = ω_{i,i+1} − ω_{i+1,i+2}.
    pub anharmonicities: Vec<f64>,
}

impl SpectrumTable {
    fn from_levels(levels: Vec<f64>) -> Self {
        let transitions: Vec<f64> = levels.windows(2).map(|w| w[1] - w[0]).collect();
        let anharmonicities: Vec<f64> = transitions.windows(2).map(|w| w[0] - w[1]).collect();
        Self {
            levels,
            transitions,
            anharmonicities,
        }
    }

    /// 0→1 transition frequency.
    pub fn omega01(&self) -> f64 {
        self.transitions[0]
    }

    /// Anharmonicity η = ω_01 − ω_12 (positive for transmons).
    pub fn eta(&self) -> f64 {
        self.anharmonicities[0]
    }
}

/// Charge-basis Hamiltonian 4·e_c·n̂² − e_j·cos(φ̂) at zero offset charge.
///
/// The matrix is (2·cutoff+1)-dimensional with 4·e_c·k² on the diagonal and
/// −e_j/2 on the first super- and sub-diagonals.
pub fn build_charge_hamiltonian(q: &QubitParams, cutoff: usize) -> Result<DMatrix<f64>> {
    q.validate()?;
    if cutoff < 3 {
        return Err(CoreError::InvalidParameter(format!(
            "charge cutoff must be ≥ 3, got {cutoff}"
        )));
    }
    let dim = 2 * cutoff + 1;
    let mut h = DMatrix::zeros(dim, dim);
    for (row, k) in (-(cutoff as i64)..=cutoff as i64).enumerate() {
        h[(row, row)] = 4.0 * q.e_c * (k * k) as f64;
        if row + 1 < dim {
            h[(row, row + 1)] = -q.e_j / 2.0;
            h[(row + 1, row)] = -q.e_j / 2.0;
        }
    }
    Ok(h)
}

/// Charge operator n̂ in the charge basis: diag(−N..N).
fn charge_operator(cutoff: usize) -> DMatrix<f64> {
    let dim = 2 * cutoff + 1;
    DMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            r as f64 - cutoff as f64
        } else {
            0.0
        }
    })
}

/// −cos(φ̂) in the charge basis: −1/2 on the first super- and sub-diagonals.
fn minus_cos_phi(cutoff: usize) -> DMatrix<f64> {
    let dim = 2 * cutoff + 1;
    DMatrix::from_fn(dim, dim, |r, c| {
        if r.abs_diff(c) == 1 {
            -0.5
        } else {
            0.0
        }
    })
}

/// Sorted eigendecomposition of a real symmetric matrix.
///
/// Eigenvalues ascending; each eigenvector's largest-magnitude component is made
/// positive so the output is deterministic.
pub(crate) fn eigh_sorted(m: &DMatrix<f64>) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let dim = m.nrows();
    let eig = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 10_000)
        .ok_or_else(|| CoreError::Numeric("symmetric eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_fn(dim, |i, _| eig.eigenvalues[order[i]]);
    let mut vectors = DMatrix::zeros(dim, dim);
    for (new, &old) in order.iter().enumerate() {
        let col = eig.eigenvectors.column(old);
        let mut imax = 0;
        for r in 1..dim {
            if col[r].abs() > col[imax].abs() {
                imax = r;
            }
        }
        let sign = if col[imax] < 0.0 { -1.0 } else { 1.0 };
        for r in 0..dim {
            vectors[(r, new)] = sign * col[r];
        }
    }
    Ok((values, vectors))
}

/// Exact single-qubit spectrum: lowest `levels_per_qubit` eigenpairs, energies
/// ground-referenced. Returns the spectrum table and the (charge_dim × levels)
/// eigenvector matrix.
pub fn diagonalize_qubit(
    q: &QubitParams,
    trunc: &TruncationConfig,
) -> Result<(SpectrumTable, DMatrix<f64>)> {
    trunc.validate()?;
    let h = build_charge_hamiltonian(q, trunc.charge_cutoff)?;
    let (values, vectors) = eigh_sorted(&h)?;
    let d = trunc.levels_per_qubit;
    let ground = values[0];
    let levels: Vec<f64> = (0..d).map(|i| values[i] - ground).collect();
    let basis = vectors.columns(0, d).into_owned();
    Ok((SpectrumTable::from_levels(levels), basis))
}

/// Static coupled system with the drive-linear operator decomposition.
///
/// `h_static` and `v_drive` live in the fixed tensor-product basis built from the
/// single-qubit eigenbases at the static parameters; the driven Hamiltonian is
/// exactly `h_static + (E_J,T(t) − Ē_J,T) · v_drive`. Dressed states are labeled
/// by maximum overlap with the bare product states.
#[derive(Debug, Clone)]
pub struct CoupledSystem {
    pub params: CircuitParams,
    pub trunc: TruncationConfig,
    /// Dimension of the coupled space, levels_per_qubit².
    pub dim: usize,
    /// Static Hamiltonian in the product basis.
    pub h_static: DMatrix<f64>,
    /// −cos(φ̂_T) in the product basis (identity on the fixed-qubit factor).
    pub v_drive: DMatrix<f64>,
    /// Dressed eigenenergies, ascending (GHz).
    pub dressed_energies: Vec<f64>,
    /// Bare label (i, j) of each dressed state, indexed by dressed index.
    pub dressed_labels: Vec<(usize, usize)>,
    /// Charge operators n̂_F ⊗ 1 and 1 ⊗ n̂_T in the product basis.
    pub n_ops: (DMatrix<f64>, DMatrix<f64>),
    /// Orthogonal rotation from the product basis to the dressed basis
    /// (columns are dressed eigenvectors).
    pub rotation: DMatrix<f64>,
    /// v_drive rotated into the dressed basis.
    pub v_dressed: DMatrix<f64>,
    /// Single-qubit spectrum tables (fixed, tunable) at the static point.
    pub spectra: (SpectrumTable, SpectrumTable),
    /// Single-qubit charge operators in their own truncated eigenbases.
    pub n_single: (DMatrix<f64>, DMatrix<f64>),
    index_of_bare: Vec<usize>,
}

impl CoupledSystem {
    /// Dressed index of a bare label.
    pub fn dressed_index(&self, label: (usize, usize)) -> Result<usize> {
        let d = self.trunc.levels_per_qubit;
        if label.0 >= d || label.1 >= d {
            return Err(CoreError::InvalidParameter(format!(
                "label ({}, {}) outside the {}-level truncation",
                label.0, label.1, d
            )));
        }
        Ok(self.index_of_bare[label.0 * d + label.1])
    }

    /// Dressed energy of a labeled state (GHz).
    pub fn dressed_energy(&self, label: (usize, usize)) -> Result<f64> {
        Ok(self.dressed_energies[self.dressed_index(label)?])
    }

    /// Dressed transition frequency E(b) − E(a) in GHz.
    pub fn dressed_transition(&self, a: (usize, usize), b: (usize, usize)) -> Result<f64> {
        Ok(self.dressed_energy(b)? - self.dressed_energy(a)?)
    }

    /// Max deviation from the exact rebuilt Hamiltonian at Josephson energy
    /// `e_j_t`, relative to the largest matrix element. The decomposition is
    /// linear in E_J so this is zero up to rounding.
    pub fn linearity_defect(&self, e_j_t: f64) -> Result<f64> {
        let q = QubitParams::new(self.params.tunable.e_c, e_j_t)?;
        let (spec_t, basis_t) = diagonalize_qubit(&q, &self.trunc)?;
        let _ = spec_t;
        // Exact H_T(e_j_t) projected into the *static* eigenbasis.
        let h_charge = build_charge_hamiltonian(&q, self.trunc.charge_cutoff)?;
        let _ = basis_t;
        let (_, static_basis) = diagonalize_qubit(&self.params.tunable, &self.trunc)?;
        let h_t_exact = static_basis.transpose() * &h_charge * &static_basis;
        let d = self.trunc.levels_per_qubit;
        let ground = {
            // Same ground reference used when the system was built.
            let h0 = build_charge_hamiltonian(&self.params.tunable, self.trunc.charge_cutoff)?;
            let (vals, _) = eigh_sorted(&h0)?;
            vals[0]
        };
        let eye_f = DMatrix::<f64>::identity(d, d);
        let rebuilt_t = {
            let (spec_static, _) = diagonalize_qubit(&self.params.tunable, &self.trunc)?;
            let mut diag = DMatrix::zeros(d, d);
            for i in 0..d {
                diag[(i, i)] = spec_static.levels[i];
            }
            let static_cos = {
                let v = minus_cos_phi(self.trunc.charge_cutoff);
                static_basis.transpose() * v * &static_basis
            };
            diag + (e_j_t - self.params.tunable.e_j) * static_cos
        };
        // h_t_exact includes the absolute ground offset; re-reference it.
        let h_t_exact = h_t_exact - DMatrix::identity(d, d) * ground;
        let full_exact = eye_f.kronecker(&h_t_exact);
        let full_rebuilt = eye_f.kronecker(&rebuilt_t);
        let mut max_dev: f64 = 0.0;
        let mut max_el: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                max_dev = max_dev.max((full_exact[(r, c)] - full_rebuilt[(r, c)]).abs());
                max_el = max_el.max(full_exact[(r, c)].abs());
            }
        }
        Ok(max_dev / max_el)
    }
}

/// Builds the coupled two-qubit system at the static operating point.
pub fn build_coupled_system(p: &CircuitParams, trunc: &TruncationConfig) -> Result<CoupledSystem> {
    p.validate()?;
    trunc.validate()?;
    let d = trunc.levels_per_qubit;
    let dim = d * d;

    let (spec_f, basis_f) = diagonalize_qubit(&p.fixed, trunc)?;
    let (spec_t, basis_t) = diagonalize_qubit(&p.tunable, trunc)?;

    let n_charge = charge_operator(trunc.charge_cutoff);
    let n_f = basis_f.transpose() * &n_charge * &basis_f;
    let n_t = basis_t.transpose() * &n_charge * &basis_t;
    let cos_t = basis_t.transpose() * minus_cos_phi(trunc.charge_cutoff) * &basis_t;

    let eye = DMatrix::<f64>::identity(d, d);
    let mut h_local = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..d {
        for j in 0..d {
            h_local[(i * d + j, i * d + j)] = spec_f.levels[i] + spec_t.levels[j];
        }
    }
    let n_f_full = n_f.kronecker(&eye);
    let n_t_full = eye.kronecker(&n_t);
    let h_static = h_local + p.j_c * &n_f_full * &n_t_full;
    let v_drive = eye.kronecker(&cos_t);

    let (energies, rotation) = eigh_sorted(&h_static)?;

    // Maximum-overlap labeling; ties are broken by the ascending-energy order in
    // which dressed states claim labels.
    let mut labels = vec![(usize::MAX, usize::MAX); dim];
    let mut index_of_bare = vec![usize::MAX; dim];
    for k in 0..dim {
        let col = rotation.column(k);
        let mut best = 0;
        for b in 1..dim {
            if col[b].abs() > col[best].abs() {
                best = b;
            }
        }
        let label = (best / d, best % d);
        if index_of_bare[best] != usize::MAX {
            return Err(CoreError::Labeling(format!(
                "dressed states {} and {} both map to bare ({}, {})",
                index_of_bare[best], k, label.0, label.1
            )));
        }
        index_of_bare[best] = k;
        labels[k] = label;
    }

    let v_dressed = rotation.transpose() * &v_drive * &rotation;

    Ok(CoupledSystem {
        params: *p,
        trunc: *trunc,
        dim,
        h_static,
        v_drive,
        dressed_energies: energies.iter().copied().collect(),
        dressed_labels: labels,
        n_ops: (n_f_full, n_t_full),
        rotation,
        v_dressed,
        spectra: (spec_f, spec_t),
        n_single: (n_f, n_t),
        index_of_bare,
    })
}

/// Static ZZ phase-accumulation rate (E_00̄ + E_11̄ − E_01̄ − E_10̄)/h in GHz.
pub fn static_zz_rate(sys: &CoupledSystem) -> Result<f64> {
    let e00 = sys.dressed_energy((0, 0))?;
    let e01 = sys.dressed_energy((0, 1))?;
    let e10 = sys.dressed_energy((1, 0))?;
    let e11 = sys.dressed_energy((1, 1))?;
    Ok(e00 + e11 - e01 - e10)
}

/// Exchange coupling |⟨01̄| J_C·n̂_F n̂_T |10̄⟩| in GHz.
///
/// This matrix-element definition is authoritative here. The harmonic
/// zero-point closed form g = J_C·(E_J,F/32E_C,F)^{1/4}·(E_J,T/32E_C,T)^{1/4}
/// agrees with it in the deep transmon limit and is useful as a cross-check.
pub fn effective_exchange_g(sys: &CoupledSystem) -> Result<f64> {
    let k01 = sys.dressed_index((0, 1))?;
    let k10 = sys.dressed_index((1, 0))?;
    let coupling = sys.params.j_c * (&sys.n_ops.0 * &sys.n_ops.1);
    let v01 = sys.rotation.column(k01);
    let v10 = sys.rotation.column(k10);
    let mut acc = 0.0;
    for r in 0..sys.dim {
        let mut row = 0.0;
        for c in 0..sys.dim {
            row += coupling[(r, c)] * v10[c];
        }
        acc += v01[r] * row;
    }
    Ok(acc.abs())
}

/// Max Hermiticity defect of a real matrix (|m − mᵀ| max element).
pub fn symmetry_defect(m: &DMatrix<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            worst = worst.max((m[(r, c)] - m[(c, r)]).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn paper_fixed() -> QubitParams {
        QubitParams::new(0.2, 20.0).unwrap()
    }

    fn paper_tunable_78() -> QubitParams {
        QubitParams::new(0.2, 78.0 * 0.2).unwrap()
    }

    fn paper_circuit(j_c: f64) -> CircuitParams {
        CircuitParams::new(paper_fixed(), paper_tunable_78(), j_c).unwrap()
    }

    #[test]
    fn charge_hamiltonian_small_cutoff() {
        let q = QubitParams::new(0.2, 20.0).unwrap();
        let h = build_charge_hamiltonian(&q, 3).unwrap();
        assert_eq!(h.nrows(), 7);
        assert_abs_diff_eq!(h[(0, 0)], 4.0 * 0.2 * 9.0);
        assert_abs_diff_eq!(h[(3, 3)], 0.0);
        assert_abs_diff_eq!(h[(2, 3)], -10.0);
        assert_abs_diff_eq!(h[(3, 2)], -10.0);
        assert_abs_diff_eq!(h[(2, 4)], 0.0);
    }

    #[test]
    fn zero_ej_is_rejected_but_charge_ladder_shape_holds() {
        assert!(QubitParams::new(0.2, 0.0).is_err());
        assert!(QubitParams::new(-0.1, 10.0).is_err());
    }

    #[test]
    fn fixed_qubit_matches_static_transition_table() {
        let trunc = TruncationConfig::default();
        let (spec, _) = diagonalize_qubit(&paper_fixed(), &trunc).unwrap();
        // Published static transitions of the fixed qubit, GHz.
        assert_abs_diff_eq!(spec.transitions[0], 5.449, epsilon = 1e-3);
        assert_abs_diff_eq!(spec.transitions[1], 5.230, epsilon = 1e-3);
        assert_abs_diff_eq!(spec.transitions[2], 4.995, epsilon = 1e-3);
    }

    #[test]
    fn tunable_qubit_matches_static_transition_table() {
        let trunc = TruncationConfig::default();
        let (spec, _) = diagonalize_qubit(&paper_tunable_78(), &trunc).unwrap();
        assert_abs_diff_eq!(spec.transitions[0], 4.787, epsilon = 1e-3);
        assert_abs_diff_eq!(spec.transitions[1], 4.565, epsilon = 1e-3);
        assert_abs_diff_eq!(spec.transitions[2], 4.323, epsilon = 1e-3);
    }

    #[test]
    fn transmon_asymptotic_formula_within_5_percent() {
        let trunc = TruncationConfig::default();
        for q in [paper_fixed(), paper_tunable_78()] {
            let (spec, _) = diagonalize_qubit(&q, &trunc).unwrap();
            let asymptotic = (8.0 * q.e_j * q.e_c).sqrt() - q.e_c;
            assert!((spec.omega01() - asymptotic).abs() / asymptotic < 0.05);
        }
    }

    #[test]
    fn transitions_decrease_in_transmon_regime() {
        let trunc = TruncationConfig::default();
        let (spec, _) = diagonalize_qubit(&paper_fixed(), &trunc).unwrap();
        for w in spec.transitions.windows(2) {
            assert!(w[1] < w[0]);
        }
        for eta in &spec.anharmonicities {
            assert!(*eta > 0.0);
        }
    }

    #[test]
    fn decoupled_limit_energies_are_additive() {
        let trunc = TruncationConfig::default();
        let p = CircuitParams::new(paper_fixed(), paper_tunable_78(), 0.0).unwrap();
        let sys = build_coupled_system(&p, &trunc).unwrap();
        let (spec_f, spec_t) = &sys.spectra;
        for i in 0..3 {
            for j in 0..3 {
                let sum = spec_f.levels[i] + spec_t.levels[j];
                let dressed = sys.dressed_energy((i, j)).unwrap();
                assert_abs_diff_eq!(dressed, sum, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn hermiticity_of_built_operators() {
        let trunc = TruncationConfig::default();
        let sys = build_coupled_system(&paper_circuit(0.010), &trunc).unwrap();
        assert!(symmetry_defect(&sys.h_static) < 1e-12);
        assert!(symmetry_defect(&sys.v_drive) < 1e-12);
        assert!(symmetry_defect(&sys.v_dressed) < 1e-11);
    }

    #[test]
    fn drive_decomposition_is_linear_in_ej() {
        let trunc = TruncationConfig::default();
        let sys = build_coupled_system(&paper_circuit(0.010), &trunc).unwrap();
        for factor in [0.8, 0.9, 1.1, 1.2] {
            let defect = sys
                .linearity_defect(sys.params.tunable.e_j * factor)
                .unwrap();
            assert!(defect < 1e-10, "linearity defect {defect} at {factor}");
        }
    }

    #[test]
    fn static_zz_matches_second_order_oracle() {
        // Independent oracle: the Duffing-model closed form
        // ζ ≈ −2g²(η_F + η_T) / [(Δ + η_F)(Δ − η_T)] with the matrix-element g.
        let trunc = TruncationConfig::default();
        let sys = build_coupled_system(&paper_circuit(0.010), &trunc).unwrap();
        let zz = static_zz_rate(&sys).unwrap();
        let g = effective_exchange_g(&sys).unwrap();
        let (spec_f, spec_t) = &sys.spectra;
        let delta = spec_t.omega01() - spec_f.omega01();
        let oracle = -2.0 * g * g * (spec_f.eta() + spec_t.eta())
            / ((delta + spec_f.eta()) * (delta - spec_t.eta()));
        assert!(
            (zz - oracle).abs() < 0.15 * oracle.abs(),
            "exact ZZ {zz} GHz vs perturbative oracle {oracle} GHz"
        );
        // Frozen exact-diagonalization value at this operating point.
        assert!((zz * 1e3 + 0.5505).abs() < 0.01, "static ZZ {} MHz", zz * 1e3);
    }

    #[test]
    fn coupled_transition_table_at_jc_10mhz() {
        // Published two-qubit transition table; the tunable qubit sits at
        // Ē_J,T/E_C = 74 for these values.
        let trunc = TruncationConfig::default();
        let tunable = QubitParams::new(0.2, 74.0 * 0.2).unwrap();
        let p = CircuitParams::new(paper_fixed(), tunable, 0.010).unwrap();
        let sys = build_coupled_system(&p, &trunc).unwrap();
        let expect = [
            ((0, 0), (1, 1), 10.1058),
            ((0, 1), (1, 0), 0.7923),
            ((1, 1), (2, 2), 9.6635),
            ((1, 2), (2, 1), 0.7959),
            ((0, 2), (1, 1), 1.0151),
            ((1, 0), (2, 1), 9.8863),
            ((1, 1), (2, 0), 0.5734),
        ];
        for (a, b, freq) in expect {
            let got = sys.dressed_transition(a, b).unwrap();
            assert!(
                (got - freq).abs() < 1e-3,
                "{a:?}<->{b:?}: {got} vs {freq}"
            );
        }
    }

    #[test]
    fn static_zz_vanishes_without_coupling() {
        let trunc = TruncationConfig::default();
        let p = CircuitParams::new(paper_fixed(), paper_tunable_78(), 0.0).unwrap();
        let sys = build_coupled_system(&p, &trunc).unwrap();
        assert!(static_zz_rate(&sys).unwrap().abs() < 1e-12);
    }

    #[test]
    fn static_zz_scales_quadratically_in_jc() {
        let trunc = TruncationConfig::default();
        let full = static_zz_rate(&build_coupled_system(&paper_circuit(0.010), &trunc).unwrap())
            .unwrap();
        let half = static_zz_rate(&build_coupled_system(&paper_circuit(0.005), &trunc).unwrap())
            .unwrap();
        let expected = 0.25 * full;
        assert!(
            (half - expected).abs() < 0.1 * expected.abs(),
            "half-coupling ZZ {half} vs quadratic prediction {expected}"
        );
    }

    #[test]
    fn exchange_g_matches_two_level_oracle() {
        let trunc = TruncationConfig::default();
        let sys = build_coupled_system(&paper_circuit(0.010), &trunc).unwrap();
        let g = effective_exchange_g(&sys).unwrap();
        // Independent perturbative oracle: J_C times the bare 0↔1 charge matrix
        // elements of each qubit.
        let n01_f = sys.n_single.0[(0, 1)].abs();
        let n01_t = sys.n_single.1[(0, 1)].abs();
        let oracle = 0.010 * n01_f * n01_t;
        assert!(
            (g - oracle).abs() / oracle < 0.02,
            "g = {g}, oracle = {oracle}"
        );
    }

    #[test]
    fn exchange_g_linear_in_jc() {
        let trunc = TruncationConfig::default();
        let g1 =
            effective_exchange_g(&build_coupled_system(&paper_circuit(0.010), &trunc).unwrap())
                .unwrap();
        let g2 =
            effective_exchange_g(&build_coupled_system(&paper_circuit(0.020), &trunc).unwrap())
                .unwrap();
        // The dressed 01̄/10̄ states themselves acquire O(J_C²) admixtures, so the
        // matrix element is linear only to that accuracy.
        assert!((g2 / g1 - 2.0).abs() < 0.02);
        let p0 = CircuitParams::new(paper_fixed(), paper_tunable_78(), 0.0).unwrap();
        let g0 = effective_exchange_g(&build_coupled_system(&p0, &trunc).unwrap()).unwrap();
        assert!(g0.abs() < 1e-14);
    }

    #[test]
    fn eigen_residuals_are_small() {
        let trunc = TruncationConfig::default();
        let sys = build_coupled_system(&paper_circuit(0.010), &trunc).unwrap();
        let h_norm = sys.h_static.norm();
        for k in 0..sys.dim {
            let v = sys.rotation.column(k).into_owned();
            let resid = &sys.h_static * &v - sys.dressed_energies[k] * &v;
            assert!(resid.norm() / h_norm < 1e-10);
        }
    }

    #[test]
    fn truncation_convergence_of_single_qubit_table() {
        let t20 = TruncationConfig::new(20, 6).unwrap();
        let t30 = TruncationConfig::new(30, 6).unwrap();
        let (s20, _) = diagonalize_qubit(&paper_fixed(), &t20).unwrap();
        let (s30, _) = diagonalize_qubit(&paper_fixed(), &t30).unwrap();
        for i in 0..3 {
            assert!((s20.transitions[i] - s30.transitions[i]).abs() < 1e-6);
        }
    }

    #[test]
    fn labels_have_dominant_overlap_at_moderate_coupling() {
        let trunc = TruncationConfig::default();
        let sys = build_coupled_system(&paper_circuit(0.030), &trunc).unwrap();
        let d = trunc.levels_per_qubit;
        for label in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let k = sys.dressed_index(label).unwrap();
            let amp = sys.rotation[(label.0 * d + label.1, k)];
            assert!(amp * amp > 0.9, "overlap² = {} for {:?}", amp * amp, label);
        }
    }
}
