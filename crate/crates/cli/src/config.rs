//! Run configuration and parameter-file loading.

use std::path::{Path, PathBuf};

use serde_json::{Map, Value};
use sharpe_horizon::DiscreteVarParams;

use crate::error::{CliError, Result};

pub const DEFAULT_SEED: u64 = 2024;
pub const DEFAULT_PERCENTILES: [f64; 5] = [10.0, 30.0, 50.0, 70.0, 90.0];
pub const DEFAULT_GAMMAS: [f64; 2] = [5.0, 15.0];
pub const DEFAULT_HORIZONS: [f64; 4] = [10.0, 20.0, 30.0, 40.0];

const PARAM_FIELDS: [&str; 8] = ["rf_quarterly", "a_r", "b_r", "a_z", "b_z", "var_r", "var_z", "cov_rz"];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: DiscreteVarParams,
    pub percentiles: Vec<f64>,
    pub gammas: Vec<f64>,
    pub horizons: Vec<f64>,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: DiscreteVarParams::brandt(),
            percentiles: DEFAULT_PERCENTILES.to_vec(),
            gammas: DEFAULT_GAMMAS.to_vec(),
            horizons: DEFAULT_HORIZONS.to_vec(),
            output_dir: PathBuf::from("out"),
            seed: DEFAULT_SEED,
        }
    }
}

impl RunConfig {
    /// Checks the grids; model parameters are checked where they are used.
    pub fn validate(self) -> Result<Self> {
        check_list("percentiles", &self.percentiles)?;
        if let Some(p) = self.percentiles.iter().find(|p| !(**p > 0.0 && **p < 100.0)) {
            return Err(CliError::Config(format!("percentile {p} is outside (0, 100)")));
        }
        check_list("gammas", &self.gammas)?;
        if let Some(g) = self.gammas.iter().find(|g| **g <= 0.0) {
            return Err(CliError::Config(format!("risk aversion {g} must be positive")));
        }
        check_list("horizons", &self.horizons)?;
        if let Some(h) = self.horizons.iter().find(|h| **h <= 0.0) {
            return Err(CliError::Config(format!("horizon {h} must be positive")));
        }
        Ok(self)
    }
}

fn check_list(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(CliError::Config(format!("{name} list is empty")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Config(format!("{name} list has a non-finite entry")));
    }
    Ok(())
}

/// Reads a JSON object holding all eight VAR fields.
pub fn load_params(path: &Path) -> Result<DiscreteVarParams> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_params(&text)
}

/// Parses parameters, naming the offending field on any error.
pub fn parse_params(text: &str) -> Result<DiscreteVarParams> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("parameter file is not valid JSON: {e}")))?;
    let Value::Object(map) = value else {
        return Err(CliError::Config("parameter file must hold a JSON object".into()));
    };
    if let Some(key) = map.keys().find(|k| !PARAM_FIELDS.contains(&k.as_str())) {
        return Err(CliError::Config(format!("unknown field `{key}` in parameter file")));
    }
    let field = |name: &str| number(&map, name);
    Ok(DiscreteVarParams {
        rf_quarterly: field("rf_quarterly")?,
        a_r: field("a_r")?,
        b_r: field("b_r")?,
        a_z: field("a_z")?,
        b_z: field("b_z")?,
        var_r: field("var_r")?,
        var_z: field("var_z")?,
        cov_rz: field("cov_rz")?,
    })
}

fn number(map: &Map<String, Value>, name: &str) -> Result<f64> {
    match map.get(name) {
        None => Err(CliError::Config(format!("missing field `{name}` in parameter file"))),
        Some(v) => v.as_f64().ok_or_else(|| CliError::Config(format!("field `{name}` must be a number, found {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BRANDT_JSON: &str = r#"{"rf_quarterly":0.015,"a_r":0.227,"b_r":0.060,"a_z":-0.155,
        "b_z":0.958,"var_r":0.0060,"var_z":0.0049,"cov_rz":-0.0051}"#;

    #[test]
    fn parses_complete_file() {
        assert_eq!(parse_params(BRANDT_JSON).unwrap(), DiscreteVarParams::brandt());
    }

    #[test]
    fn errors_name_the_field() {
        let missing = BRANDT_JSON.replace(r#""b_z":0.958,"#, "");
        assert!(parse_params(&missing).unwrap_err().to_string().contains("b_z"));
        let wrong = BRANDT_JSON.replace("0.0049", r#""high""#);
        assert!(parse_params(&wrong).unwrap_err().to_string().contains("var_z"));
        let extra = BRANDT_JSON.replace("{", r#"{"beta":1,"#);
        assert!(parse_params(&extra).unwrap_err().to_string().contains("beta"));
        assert_eq!(parse_params("{").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn grid_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig { percentiles: vec![0.0], ..RunConfig::default() };
        assert!(bad.validate().is_err());
        let empty = RunConfig { gammas: vec![], ..RunConfig::default() };
        assert!(empty.validate().is_err());
    }
}
