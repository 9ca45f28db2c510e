use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::codes::{LinearCode, NamedCode, DEFAULT_GOLD_DECIMATION};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::SamplingMode;
use crate::stats::default_z_grid;

/// Default master seed.
pub const DEFAULT_SEED: u64 = 0x5EED_C0DE;
/// Default number of trials per (n, p) pair.
pub const DEFAULT_TRIALS: usize = 10;
/// Gold-family degrees at or above this need `large`.
pub const LARGE_M: u32 = 13;

/// The (m, n, p) schedule used for the augmented Gold simulations.
pub const GOLD_GRID: [(u32, usize); 4] = [(5, 8), (7, 20), (9, 35), (11, 50)];

/// Experiment configuration, read from JSON.
///
/// `code_family` is `gold`, `gold+1`, `rm1`, or `file:<path>` for a
/// generator-matrix file. Each entry of `triples` is `[m, p]` for named
/// families and `[n, p]` for a file, where n must match the file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub code_family: String,
    #[serde(default = "default_decimation")]
    pub decimation: u32,
    /// Field modulus overrides keyed by m, as "c0,c1,…,cm".
    #[serde(default)]
    pub moduli: BTreeMap<u32, String>,
    pub triples: Vec<(u32, usize)>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub mode: SamplingMode,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Evaluation points as [re, im].
    #[serde(default = "default_grid")]
    pub z_grid: Vec<(f64, f64)>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub allow_uncertified: bool,
    #[serde(default)]
    pub large: bool,
    /// Fill the runtime_ms column; off by default so output is reproducible.
    #[serde(default)]
    pub record_timing: bool,
    #[serde(default = "default_true")]
    pub write_esd: bool,
}

fn default_decimation() -> u32 {
    DEFAULT_GOLD_DECIMATION
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_grid() -> Vec<(f64, f64)> {
    default_z_grid().into_iter().map(|z| (z.re, z.im)).collect()
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_true() -> bool {
    true
}

impl ExperimentConfig {
    /// The augmented Gold grid with default settings.
    pub fn gold_grid() -> Self {
        ExperimentConfig {
            code_family: "gold+1".into(),
            decimation: DEFAULT_GOLD_DECIMATION,
            moduli: BTreeMap::new(),
            triples: GOLD_GRID.to_vec(),
            trials: DEFAULT_TRIALS,
            mode: SamplingMode::Distinct,
            seed: DEFAULT_SEED,
            z_grid: default_grid(),
            output_dir: default_output_dir(),
            allow_uncertified: false,
            large: false,
            record_timing: false,
            write_esd: true,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn z_points(&self) -> Vec<Complex64> {
        self.z_grid
            .iter()
            .map(|&(re, im)| Complex64::new(re, im))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if self.triples.is_empty() {
            return Err(Error::Config("no triples given".into()));
        }
        if let Some(&(_, p)) = self.triples.iter().find(|&&(_, p)| p < 2) {
            return Err(Error::Config(format!("p = {p}: every p must be >= 2")));
        }
        if let Some(&(re, im)) = self
            .z_grid
            .iter()
            .find(|&&(_, im)| im.is_nan() || im <= 0.0)
        {
            return Err(Error::Config(format!(
                "z = {re}{im:+}i is not in the upper half-plane"
            )));
        }
        if self
            .z_grid
            .iter()
            .any(|&(re, im)| !re.is_finite() || !im.is_finite())
        {
            return Err(Error::Config("z grid has non-finite entries".into()));
        }
        if self.file_path().is_none() {
            NamedCode::from_family(&self.code_family, 3, self.decimation)
                .map_err(|e| Error::Config(e.to_string()))?;
            if !self.large {
                if let Some(&(m, _)) = self.triples.iter().find(|&&(m, _)| m >= LARGE_M) {
                    return Err(Error::Config(format!(
                        "m = {m} needs \"large\": true (or --large)"
                    )));
                }
            }
        }
        for (m, text) in &self.moduli {
            let coeffs =
                FieldSpec::parse_modulus(text).map_err(|e| Error::Config(e.to_string()))?;
            if coeffs.len() != *m as usize + 1 {
                return Err(Error::Config(format!(
                    "modulus for m = {m} must have {} coefficients",
                    m + 1
                )));
            }
        }
        Ok(())
    }

    fn file_path(&self) -> Option<&str> {
        self.code_family.strip_prefix("file:")
    }

    /// Builds the code for one triple; `size` is m for named families, n for files.
    pub fn build_code(&self, size: u32) -> Result<LinearCode> {
        if let Some(path) = self.file_path() {
            let code = LinearCode::read(Path::new(path))?;
            if code.len() != size as usize {
                return Err(Error::Config(format!(
                    "{path} has length {}, triple asks for n = {size}",
                    code.len()
                )));
            }
            return Ok(code);
        }
        let named = NamedCode::from_family(&self.code_family, size, self.decimation)?;
        let field = match self.moduli.get(&size) {
            Some(text) => Some(Arc::new(FieldSpec::new(
                2,
                size,
                FieldSpec::parse_modulus(text)?,
            )?)),
            None => None,
        };
        named.build_with(field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_json_gets_defaults() {
        let cfg =
            ExperimentConfig::from_json(r#"{"code_family": "gold", "triples": [[3, 2]]}"#).unwrap();
        assert_eq!(cfg.trials, 10);
        assert_eq!(cfg.seed, 0x5EED_C0DE);
        assert_eq!(cfg.mode, SamplingMode::Distinct);
        assert_eq!(cfg.z_grid.len(), 15);
        let back = ExperimentConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn invalid_configs() {
        let bad = [
            r#"{"code_family": "gold", "triples": [[3, 1]]}"#,
            r#"{"code_family": "gold", "triples": [[3, 2]], "trials": 0}"#,
            r#"{"code_family": "gold", "triples": [[3, 2]], "z_grid": [[0, 0]]}"#,
            r#"{"code_family": "gold", "triples": [[3, 2]], "z_grid": [[1, -1]]}"#,
            r#"{"code_family": "bch", "triples": [[3, 2]]}"#,
            r#"{"code_family": "gold", "triples": [[15, 100]]}"#,
            r#"{"code_family": "gold", "triples": []}"#,
            r#"{"code_family": "gold", "triples": [[5, 2]], "moduli": {"5": "1,1"}}"#,
            r#"{"code_family": "gold", "triples": [[5, 2]], "mode": "random"}"#,
            r#"{"code_family": "gold", "triples": [[5, 2]], "bogus": 1}"#,
            r#"not json"#,
        ];
        for text in bad {
            assert!(
                matches!(ExperimentConfig::from_json(text), Err(Error::Config(_))),
                "{text}"
            );
        }
        let ok = r#"{"code_family": "gold", "triples": [[15, 100]], "large": true}"#;
        assert!(ExperimentConfig::from_json(ok).is_ok());
    }

    #[test]
    fn modulus_override_is_used() {
        let cfg = ExperimentConfig::from_json(
            r#"{"code_family": "gold", "triples": [[5, 4]], "moduli": {"5": "1,1,1,1,0,1"}}"#,
        )
        .unwrap();
        let code = cfg.build_code(5).unwrap();
        let default =
            ExperimentConfig::from_json(r#"{"code_family": "gold", "triples": [[5, 4]]}"#)
                .unwrap()
                .build_code(5)
                .unwrap();
        assert_eq!(code.dimension(), 10);
        assert_ne!(code.generator(), default.generator());
    }
}
