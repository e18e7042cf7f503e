//! Run configuration: defaults, an optional JSON file, then flags.

use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use xflow_core::{FlowSpec, GeometryClass, IntegratorOptions, MetricDiag};

use crate::InvalidInput;

/// Environment variable naming a default config file.
pub const CONFIG_ENV: &str = "XFLOW_CONFIG";
pub const DEFAULT_T_MAX: f64 = 10.0;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Partial configuration; used for both the config file and the flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigLayer {
    pub geometry: Option<GeometryClass>,
    pub flow: Option<FlowSpec>,
    pub init: Option<[f64; 3]>,
    pub t_max: Option<f64>,
    pub rtol: Option<f64>,
    pub atol: Option<f64>,
    pub samples: Option<usize>,
    pub max_steps: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub analysis: Option<bool>,
}

impl ConfigLayer {
    pub fn load(path: &Path) -> anyhow::Result<ConfigLayer> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))
            .map_err(InvalidInput::wrap)?;
        serde_json::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))
            .map_err(InvalidInput::wrap)
    }

    /// Values set in `top` win.
    pub fn overlay(self, top: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            geometry: top.geometry.or(self.geometry),
            flow: top.flow.or(self.flow),
            init: top.init.or(self.init),
            t_max: top.t_max.or(self.t_max),
            rtol: top.rtol.or(self.rtol),
            atol: top.atol.or(self.atol),
            samples: top.samples.or(self.samples),
            max_steps: top.max_steps.or(self.max_steps),
            output: top.output.or(self.output),
            format: top.format.or(self.format),
            analysis: top.analysis.or(self.analysis),
        }
    }

    pub fn resolve(self) -> anyhow::Result<RunConfig> {
        let defaults = IntegratorOptions::new(DEFAULT_T_MAX);
        let cfg = RunConfig {
            geometry: self
                .geometry
                .ok_or_else(|| InvalidInput::msg("missing --geometry"))?,
            flow: self.flow.unwrap_or(FlowSpec::NEGATIVE),
            init: self
                .init
                .ok_or_else(|| InvalidInput::msg("missing --init"))?,
            t_max: self.t_max.unwrap_or(DEFAULT_T_MAX),
            rtol: self.rtol.unwrap_or(defaults.rtol),
            atol: self.atol.unwrap_or(defaults.atol),
            samples: self.samples.unwrap_or(defaults.samples),
            max_steps: self.max_steps.unwrap_or(defaults.max_steps),
            output: self.output,
            format: self.format.unwrap_or_default(),
            analysis: self.analysis.unwrap_or(true),
        };
        cfg.initial()?;
        cfg.options().validate().map_err(InvalidInput::wrap)?;
        Ok(cfg)
    }
}

/// Effective configuration of one run, echoed as output metadata. Its keys
/// are those of the config file, so the echo can be fed back in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    pub geometry: GeometryClass,
    pub flow: FlowSpec,
    pub init: [f64; 3],
    pub t_max: f64,
    pub rtol: f64,
    pub atol: f64,
    pub samples: usize,
    pub max_steps: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub analysis: bool,
}

impl RunConfig {
    pub fn initial(&self) -> anyhow::Result<MetricDiag> {
        MetricDiag::from_array(self.init).map_err(InvalidInput::wrap)
    }

    pub fn options(&self) -> IntegratorOptions {
        IntegratorOptions::new(self.t_max)
            .with_tolerances(self.rtol, self.atol)
            .with_samples(self.samples)
            .with_max_steps(self.max_steps)
    }
}

/// Parses `A,B,C`.
pub fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected A,B,C, got `{s}`"));
    }
    let mut out = [0.0; 3];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
    }
    Ok(out)
}

/// Config file named by `--config`, falling back to `XFLOW_CONFIG`.
pub fn config_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| {
        std::env::var_os(CONFIG_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_parsing() {
        assert_eq!(parse_triple("1,2.5, 3e-1").unwrap(), [1.0, 2.5, 0.3]);
        assert!(parse_triple("1,2").is_err());
        assert!(parse_triple("1,x,2").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file: ConfigLayer = serde_json::from_str(
            r#"{"geometry": "sol", "init": [1, 8, 1], "t-max": 3.0, "rtol": 1e-8}"#,
        )
        .unwrap();
        let flags = ConfigLayer {
            t_max: Some(5.0),
            ..Default::default()
        };
        let cfg = file.overlay(flags).resolve().unwrap();
        assert_eq!(cfg.geometry, GeometryClass::Sol);
        assert_eq!(cfg.t_max, 5.0);
        assert_eq!(cfg.rtol, 1e-8);
        assert_eq!(cfg.atol, 1e-13);
        assert_eq!(cfg.flow, FlowSpec::NEGATIVE);
    }

    #[test]
    fn unknown_keys_rejected() {
        let r: Result<ConfigLayer, _> = serde_json::from_str(r#"{"geometry": "sol", "tmax": 3}"#);
        assert!(r.is_err());
    }

    #[test]
    fn echo_reads_back() {
        let cfg = ConfigLayer {
            geometry: Some(GeometryClass::E2),
            init: Some([2.0, 2.0, 5.0]),
            ..Default::default()
        }
        .resolve()
        .unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        let layer: ConfigLayer = serde_json::from_str(&text).unwrap();
        assert_eq!(layer.resolve().unwrap(), cfg);
    }

    #[test]
    fn invalid_values_rejected() {
        let base = ConfigLayer {
            geometry: Some(GeometryClass::Sol),
            ..Default::default()
        };
        assert!(base.clone().resolve().is_err());
        let bad = ConfigLayer {
            init: Some([1.0, -1.0, 1.0]),
            ..base.clone()
        };
        assert!(bad.resolve().is_err());
        let bad = ConfigLayer {
            init: Some([1.0; 3]),
            rtol: Some(0.0),
            ..base
        };
        assert!(bad.resolve().is_err());
    }
}
