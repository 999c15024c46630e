//! Time-dependent Josephson-energy schedules.
//!
//! A schedule is a Gaussian flat-top envelope multiplying one or two cosine
//! tones, offset by the static Josephson energy. The numerically extracted
//! frequency harmonics of the modulated qubit are also computed here.

use crate::circuit::{diagonalize_qubit, QubitParams, TruncationConfig};
use crate::error::{CoreError, Result};

/// Gaussian flat-top envelope with ramp time `t_rise` and total length `t_gate`.
///
/// The envelope vanishes exactly at t = 0 and t = t_gate and holds the plateau
/// value 1 − e⁻² on [t_rise, t_gate − t_rise].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseEnvelope {
    pub t_gate: f64,
    pub t_rise: f64,
}

impl PulseEnvelope {
    pub fn new(t_gate: f64, t_rise: f64) -> Result<Self> {
        if !(t_gate > 0.0) || !t_gate.is_finite() {
            return Err(CoreError::InvalidParameter(format!(
                "t_gate must be positive, got {t_gate}"
            )));
        }
        if !(t_rise > 0.0) || t_rise >= t_gate / 2.0 {
            return Err(CoreError::InvalidParameter(format!(
                "t_rise must satisfy 0 < t_rise < t_gate/2, got {t_rise} for t_gate {t_gate}"
            )));
        }
        Ok(Self { t_gate, t_rise })
    }

    /// Plateau value 1 − e⁻².
    pub fn plateau(&self) -> f64 {
        1.0 - (-2.0f64).exp()
    }

    /// Envelope value at time t (ns); zero outside [0, t_gate].
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 || t >= self.t_gate {
            return 0.0;
        }
        let t_left = self.t_rise;
        let t_right = self.t_gate - self.t_rise;
        let e2 = (-2.0f64).exp();
        if t < t_left {
            let u = (t - t_left) / self.t_rise;
            (-2.0 * u * u).exp() - e2
        } else if t <= t_right {
            1.0 - e2
        } else {
            let u = (t - t_right) / self.t_rise;
            (-2.0 * u * u).exp() - e2
        }
    }
}

/// One modulation tone: amplitude δE_J,T and linear frequency ω_p/2π, both GHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToneSpec {
    pub delta_ej: f64,
    pub omega_p: f64,
}

impl ToneSpec {
    pub fn new(delta_ej: f64, omega_p: f64) -> Result<Self> {
        if delta_ej < 0.0 || !delta_ej.is_finite() {
            return Err(CoreError::InvalidParameter(format!(
                "delta_ej must be non-negative, got {delta_ej}"
            )));
        }
        if !(omega_p > 0.0) || !omega_p.is_finite() {
            return Err(CoreError::InvalidParameter(format!(
                "omega_p must be positive, got {omega_p}"
            )));
        }
        Ok(Self { delta_ej, omega_p })
    }
}

/// Complete drive schedule: envelope, one or two tones, and the static value the
/// Josephson energy returns to outside the pulse.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveSchedule {
    pub envelope: PulseEnvelope,
    pub tones: Vec<ToneSpec>,
    pub ej_static: f64,
}

impl DriveSchedule {
    pub fn new(envelope: PulseEnvelope, tones: Vec<ToneSpec>, ej_static: f64) -> Result<Self> {
        if tones.is_empty() || tones.len() > 2 {
            return Err(CoreError::InvalidParameter(format!(
                "schedules carry one or two tones, got {}",
                tones.len()
            )));
        }
        if !(ej_static > 0.0) {
            return Err(CoreError::InvalidParameter(format!(
                "ej_static must be positive, got {ej_static}"
            )));
        }
        let total: f64 = tones.iter().map(|t| t.delta_ej).sum();
        if total * envelope.plateau() >= ej_static {
            return Err(CoreError::InvalidParameter(format!(
                "total modulation amplitude {total} GHz drives E_J,T below zero (static {ej_static})"
            )));
        }
        Ok(Self {
            envelope,
            tones,
            ej_static,
        })
    }

    pub fn one_tone(envelope: PulseEnvelope, tone: ToneSpec, ej_static: f64) -> Result<Self> {
        Self::new(envelope, vec![tone], ej_static)
    }

    /// E_J,T(t) in GHz: ej_static + f(t)·Σ_k δE_k·cos(2π·ω_k·t).
    pub fn ej_of_t(&self, t: f64) -> f64 {
        let f = self.envelope.eval(t);
        if f == 0.0 {
            return self.ej_static;
        }
        let mut modulation = 0.0;
        for tone in &self.tones {
            modulation += tone.delta_ej * (std::f64::consts::TAU * tone.omega_p * t).cos();
        }
        self.ej_static + f * modulation
    }

    /// Deviation from the static value, (E_J,T(t) − Ē_J,T).
    pub fn ej_deviation(&self, t: f64) -> f64 {
        self.ej_of_t(t) - self.ej_static
    }

    pub fn is_one_tone(&self) -> bool {
        self.tones.len() == 1
    }
}

/// Fourier harmonics of the modulated tunable-qubit frequency on the plateau.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicDecomposition {
    /// Time-averaged 0→1 frequency ω̄_T/2π (GHz).
    pub omega_bar: f64,
    /// Cosine harmonics δω_m/2π of the 0→1 frequency for m = 1..=M (GHz).
    pub delta_omega: Vec<f64>,
    /// Time-averaged 1→2 frequency (GHz).
    pub omega_bar_12: f64,
    /// Cosine harmonics of the 1→2 frequency (GHz).
    pub delta_omega_12: Vec<f64>,
}

impl HarmonicDecomposition {
    /// Reconstruct ω_T(t) from the retained harmonics at plateau time t.
    pub fn reconstruct(&self, omega_p: f64, t: f64) -> f64 {
        let mut w = self.omega_bar;
        for (m, dw) in self.delta_omega.iter().enumerate() {
            w += dw * (std::f64::consts::TAU * (m as f64 + 1.0) * omega_p * t).cos();
        }
        w
    }
}

/// Number of uniform samples per modulation period used for the projections.
const HARMONIC_SAMPLES: usize = 256;

/// Numerically extracts the frequency harmonics of a one-tone schedule.
///
/// The instantaneous qubit spectrum is computed by exact diagonalization over
/// one modulation period on the plateau (envelope at its flat value) and
/// projected onto cos(m·2π·ω_p·t).
pub fn harmonic_decomposition(
    s: &DriveSchedule,
    q: &QubitParams,
    trunc: &TruncationConfig,
    harmonics: usize,
) -> Result<HarmonicDecomposition> {
    if !s.is_one_tone() {
        return Err(CoreError::UnsupportedSchedule(
            "harmonic decomposition is defined for periodic one-tone drive".into(),
        ));
    }
    let tone = s.tones[0];
    let plateau = s.envelope.plateau();
    let period = 1.0 / tone.omega_p;
    let n = HARMONIC_SAMPLES;

    let mut w01 = vec![0.0; n];
    let mut w12 = vec![0.0; n];
    for (k, (w01_k, w12_k)) in w01.iter_mut().zip(w12.iter_mut()).enumerate() {
        let t = period * k as f64 / n as f64;
        let ej = s.ej_static
            + plateau * tone.delta_ej * (std::f64::consts::TAU * tone.omega_p * t).cos();
        if ej <= 0.0 {
            return Err(CoreError::InvalidParameter(format!(
                "instantaneous E_J,T = {ej} GHz is non-positive on the plateau"
            )));
        }
        let qt = QubitParams::new(q.e_c, ej)?;
        let (spec, _) = diagonalize_qubit(&qt, trunc)?;
        *w01_k = spec.transitions[0];
        *w12_k = spec.transitions[1];
    }

    let project = |w: &[f64], m: usize| -> f64 {
        let mut acc = 0.0;
        for (k, wk) in w.iter().enumerate() {
            let phase = std::f64::consts::TAU * (m * k) as f64 / n as f64;
            acc += wk * phase.cos();
        }
        if m == 0 {
            acc / n as f64
        } else {
            2.0 * acc / n as f64
        }
    };

    let omega_bar = project(&w01, 0);
    let omega_bar_12 = project(&w12, 0);
    let delta_omega: Vec<f64> = (1..=harmonics).map(|m| project(&w01, m)).collect();
    let delta_omega_12: Vec<f64> = (1..=harmonics).map(|m| project(&w12, m)).collect();

    Ok(HarmonicDecomposition {
        omega_bar,
        delta_omega,
        omega_bar_12,
        delta_omega_12,
    })
}
