//! Deterministic CSV/JSON report writing: `#`-prefixed header comments carrying
//! the config hash and assumption ledger, 12-significant-digit float fields,
//! LF line endings.

use std::fs;
use std::path::{Path, PathBuf};

use crate::config::ExperimentConfig;
use crate::CliError;

/// Formats a float with 12 significant digits, deterministically.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    format!("{:.11e}", x)
}

pub struct ReportWriter {
    dir: PathBuf,
    header: Vec<String>,
}

impl ReportWriter {
    pub fn new(dir: &Path, config: &ExperimentConfig) -> Result<Self, CliError> {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("creating {}: {e}", dir.display())))?;
        let mut header = vec![format!("config_hash: {:016x}", config.hash())];
        for a in config.assumptions() {
            header.push(format!("assumption: {a}"));
        }
        Ok(Self {
            dir: dir.to_path_buf(),
            header,
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    /// Writes a CSV file: header comments, column line, then rows.
    pub fn write_csv(
        &self,
        name: &str,
        columns: &[&str],
        rows: &[Vec<String>],
    ) -> Result<PathBuf, CliError> {
        let mut text = String::new();
        for h in &self.header {
            text.push_str("# ");
            text.push_str(h);
            text.push('\n');
        }
        text.push_str(&columns.join(","));
        text.push('\n');
        for row in rows {
            text.push_str(&row.join(","));
            text.push('\n');
        }
        let path = self.path(name);
        fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }

    /// Writes a JSON file with the config hash and assumptions embedded.
    pub fn write_json(&self, name: &str, value: serde_json::Value) -> Result<PathBuf, CliError> {
        let mut obj = match value {
            serde_json::Value::Object(m) => m,
            other => {
                let mut m = serde_json::Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        obj.insert(
            "config_hash".into(),
            serde_json::Value::String(self.header[0].trim_start_matches("config_hash: ").into()),
        );
        obj.insert(
            "assumptions".into(),
            serde_json::Value::Array(
                self.header[1..]
                    .iter()
                    .map(|a| {
                        serde_json::Value::String(
                            a.trim_start_matches("assumption: ").to_string(),
                        )
                    })
                    .collect(),
            ),
        );
        let path = self.path(name);
        let text = serde_json::to_string_pretty(&serde_json::Value::Object(obj))
            .expect("json serializes");
        fs::write(&path, text + "\n")
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }
}

/// Unwraps a phase sequence in place so consecutive values never jump by more
/// than π.
pub fn unwrap_phases(zetas: &mut [f64]) {
    use std::f64::consts::{PI, TAU};
    for k in 1..zetas.len() {
        let mut z = zetas[k];
        while z - zetas[k - 1] > PI {
            z -= TAU;
        }
        while z - zetas[k - 1] < -PI {
            z += TAU;
        }
        zetas[k] = z;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_has_12_significant_digits() {
        assert_eq!(fmt_float(1.0), "1.00000000000e0");
        assert_eq!(fmt_float(0.0126), "1.26000000000e-2");
        assert_eq!(fmt_float(-3.5e-7), "-3.50000000000e-7");
    }

    #[test]
    fn unwrap_removes_jumps() {
        use std::f64::consts::PI;
        let mut z = vec![3.0, -3.1, -2.9, 3.1];
        unwrap_phases(&mut z);
        for w in z.windows(2) {
            assert!((w[1] - w[0]).abs() <= PI + 1e-12);
        }
        assert!((z[1] - (2.0 * PI - 3.1)).abs() < 1e-12);
    }
}
