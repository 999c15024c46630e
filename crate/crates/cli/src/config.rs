//! JSON experiment configuration: parsing, validation with path-qualified
//! errors, and translation into core types.

use serde::{Deserialize, Serialize};

use gatecraft_core::evolution::GateTarget;
use gatecraft_core::{
    CircuitParams, GateSpec, LindbladConfig, QubitParams, RateConvention, ResonanceRule,
    TruncationConfig,
};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitSection {
    pub e_c: f64,
    pub e_j: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitSection {
    pub fixed: QubitSection,
    pub tunable: QubitSection,
    pub j_c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TruncationSection {
    pub charge_cutoff: usize,
    pub levels_per_qubit: usize,
}

impl Default for TruncationSection {
    fn default() -> Self {
        let t = TruncationConfig::default();
        Self {
            charge_cutoff: t.charge_cutoff,
            levels_per_qubit: t.levels_per_qubit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateName {
    Cz,
    Iswap,
    SqrtIswap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleName {
    CzVia1102,
    CzVia2011,
    SwapResonant,
}

fn default_tone_count() -> usize {
    1
}
fn default_t_gate() -> f64 {
    75.0
}
fn default_t_rise() -> f64 {
    10.0
}
fn default_budget() -> usize {
    400
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateSection {
    pub target: GateName,
    #[serde(default = "default_tone_count")]
    pub tone_count: usize,
    #[serde(default = "default_t_gate")]
    pub t_gate: f64,
    #[serde(default = "default_t_rise")]
    pub t_rise: f64,
    /// Defaults to the 11↔02 condition for CZ and the swap resonance otherwise.
    #[serde(default)]
    pub resonance_rule: Option<RuleName>,
    #[serde(default = "default_budget")]
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    JC,
    T1,
    DeltaEj,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConventionName {
    StandardT1,
    LiteralEq16,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LindbladSection {
    pub t1_fixed_us: f64,
    pub t1_tunable_us: f64,
    #[serde(default)]
    pub j_t: Option<usize>,
    #[serde(default)]
    pub rate_convention: Option<ConventionName>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub circuit: CircuitSection,
    #[serde(default)]
    pub truncation: TruncationSection,
    #[serde(default)]
    pub gate: Option<GateSection>,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub lindblad: Option<LindbladSection>,
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub seed_notes: Option<String>,
}

fn positive(value: f64, path: &str) -> Result<(), CliError> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(CliError::Validation(format!(
            "{path}: must be positive and finite, got {value}"
        )));
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: ExperimentConfig = serde_json::from_str(text)
            .map_err(|e| CliError::Validation(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        positive(self.circuit.fixed.e_c, "circuit.fixed.e_c")?;
        positive(self.circuit.fixed.e_j, "circuit.fixed.e_j")?;
        positive(self.circuit.tunable.e_c, "circuit.tunable.e_c")?;
        positive(self.circuit.tunable.e_j, "circuit.tunable.e_j")?;
        if self.circuit.j_c < 0.0 {
            return Err(CliError::Validation(format!(
                "circuit.j_c: must be non-negative, got {}",
                self.circuit.j_c
            )));
        }
        self.truncation_config()
            .map_err(|e| CliError::Validation(format!("truncation: {e}")))?;
        if let Some(gate) = &self.gate {
            self.gate_spec(gate)
                .map_err(|e| CliError::Validation(format!("gate: {e}")))?;
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                return Err(CliError::Validation(
                    "sweep.values: must not be empty".into(),
                ));
            }
            if matches!(sweep.axis, SweepAxis::JC | SweepAxis::T1)
                && sweep.values.iter().any(|&v| v <= 0.0)
            {
                return Err(CliError::Validation(
                    "sweep.values: must be positive for this axis".into(),
                ));
            }
        }
        if let Some(l) = &self.lindblad {
            positive(l.t1_fixed_us, "lindblad.t1_fixed_us")
                .or_else(|_| if l.t1_fixed_us.is_infinite() { Ok(()) } else { Err(CliError::Validation(format!("lindblad.t1_fixed_us: must be positive or infinite, got {}", l.t1_fixed_us))) })?;
            positive(l.t1_tunable_us, "lindblad.t1_tunable_us")
                .or_else(|_| if l.t1_tunable_us.is_infinite() { Ok(()) } else { Err(CliError::Validation(format!("lindblad.t1_tunable_us: must be positive or infinite, got {}", l.t1_tunable_us))) })?;
            if let Some(j_t) = l.j_t {
                if j_t > self.truncation.levels_per_qubit - 1 {
                    return Err(CliError::Validation(format!(
                        "lindblad.j_t: {j_t} exceeds levels_per_qubit − 1 = {}",
                        self.truncation.levels_per_qubit - 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn circuit_params(&self) -> Result<CircuitParams, gatecraft_core::CoreError> {
        CircuitParams::new(
            QubitParams::new(self.circuit.fixed.e_c, self.circuit.fixed.e_j)?,
            QubitParams::new(self.circuit.tunable.e_c, self.circuit.tunable.e_j)?,
            self.circuit.j_c,
        )
    }

    pub fn truncation_config(&self) -> Result<TruncationConfig, gatecraft_core::CoreError> {
        TruncationConfig::new(
            self.truncation.charge_cutoff,
            self.truncation.levels_per_qubit,
        )
    }

    pub fn gate_spec(&self, gate: &GateSection) -> Result<GateSpec, gatecraft_core::CoreError> {
        let target = match gate.target {
            GateName::Cz => GateTarget::cz(),
            GateName::Iswap => GateTarget::iswap(),
            GateName::SqrtIswap => GateTarget::sqrt_iswap(),
        };
        let rule = match gate.resonance_rule {
            Some(RuleName::CzVia1102) => ResonanceRule::CzVia1102,
            Some(RuleName::CzVia2011) => ResonanceRule::CzVia2011,
            Some(RuleName::SwapResonant) => ResonanceRule::SwapResonant,
            None => match gate.target {
                GateName::Cz => ResonanceRule::CzVia1102,
                _ => ResonanceRule::SwapResonant,
            },
        };
        GateSpec::new(target, gate.tone_count, gate.t_gate, gate.t_rise, rule)
    }

    pub fn lindblad_config(
        &self,
        section: &LindbladSection,
    ) -> Result<LindbladConfig, gatecraft_core::CoreError> {
        let mut cfg = LindbladConfig::new(
            section.t1_fixed_us,
            section.t1_tunable_us,
            section
                .j_t
                .unwrap_or(self.truncation.levels_per_qubit - 1),
        );
        cfg.rate_convention = match section.rate_convention {
            Some(ConventionName::LiteralEq16) => RateConvention::LiteralEq16,
            _ => RateConvention::StandardT1,
        };
        Ok(cfg)
    }

    /// Canonical serialization used for hashing and reproducibility checks.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// FNV-1a hash of the canonical serialization.
    pub fn hash(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.canonical_json().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }

    /// Assumption ledger lines embedded in every report.
    pub fn assumptions(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(gate) = &self.gate {
            out.push(format!(
                "gaussian flat-top ramp t_rise = {} ns (plateau value 1 - e^-2)",
                gate.t_rise
            ));
            if gate.tone_count == 2 {
                out.push(format!(
                    "two-tone frequencies fixed at the swap seed and seed + 1/t_gate = seed + {:.6} GHz; amplitudes optimized only",
                    1.0 / gate.t_gate
                ));
            }
        }
        if let Some(l) = &self.lindblad {
            let conv = match l.rate_convention {
                Some(ConventionName::LiteralEq16) => "literal_eq16 (population decay 2/T1)",
                _ => "standard_t1 (population decay exactly 1/T1)",
            };
            out.push(format!("dissipator rate convention: {conv}"));
        }
        if let Some(notes) = &self.seed_notes {
            out.push(format!("seed notes: {notes}"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_json() -> String {
        r#"{
            "circuit": {
                "fixed": {"e_c": 0.2, "e_j": 20.0},
                "tunable": {"e_c": 0.2, "e_j": 15.6},
                "j_c": 0.010
            },
            "gate": {"target": "cz"}
        }"#
        .to_string()
    }

    #[test]
    fn parses_with_defaults() {
        let cfg = ExperimentConfig::from_json(&paper_json()).unwrap();
        assert_eq!(cfg.truncation.charge_cutoff, 20);
        assert_eq!(cfg.truncation.levels_per_qubit, 6);
        let gate = cfg.gate.clone().unwrap();
        assert_eq!(gate.tone_count, 1);
        assert_eq!(gate.t_gate, 75.0);
        assert_eq!(gate.t_rise, 10.0);
        let spec = cfg.gate_spec(&gate).unwrap();
        assert_eq!(spec.resonance_rule, gatecraft_core::ResonanceRule::CzVia1102);
    }

    #[test]
    fn round_trips() {
        let cfg = ExperimentConfig::from_json(&paper_json()).unwrap();
        let text = cfg.canonical_json();
        let again = ExperimentConfig::from_json(&text).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(cfg.hash(), again.hash());
    }

    #[test]
    fn path_qualified_errors() {
        let bad = paper_json().replace("\"e_c\": 0.2, \"e_j\": 20.0", "\"e_c\": -0.2, \"e_j\": 20.0");
        let err = ExperimentConfig::from_json(&bad).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("circuit.fixed.e_c"), "message: {msg}");
    }

    #[test]
    fn rejects_unknown_fields() {
        let bad = paper_json().replace("\"j_c\": 0.010", "\"j_c\": 0.010, \"typo\": 1");
        assert!(ExperimentConfig::from_json(&bad).is_err());
    }

    #[test]
    fn hash_changes_with_content() {
        let a = ExperimentConfig::from_json(&paper_json()).unwrap();
        let b = ExperimentConfig::from_json(&paper_json().replace("0.010", "0.011")).unwrap();
        assert_ne!(a.hash(), b.hash());
    }
}
