//! Pipeline configuration with layered sources.
//!
//! Precedence, lowest to highest: built-in defaults, a TOML config file,
//! `AMRD_*` environment variables, command-line flags. Every layer may set
//! any subset of the knobs; validation runs once on the merged result.
//!
//! ```toml
//! alpha = 0.3
//! selection_mode = "high-only"
//! boundary_prefix = "Ġ"
//! match_policy = "substring"
//! k_max = 10
//! keep_fraction = 0.5
//! interval_standard = [1, 10]
//! interval_long = [6, 10]
//! workers = 0
//! ```

use crate::eval::MatchPolicy;
use crate::stats::SelectionMode;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

/// Errors raised while loading or validating configuration.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("config file: {0}")]
    Toml(String),
    #[error("environment variable {key}: {message}")]
    Env { key: String, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// All tunables of the pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    /// Significance threshold for concept selection, in (0, 1].
    pub alpha: f64,
    /// High-only (default) or literal two-sided selection.
    pub selection_mode: SelectionMode,
    /// Subword boundary prefix of the tokenizer that scored the graphs.
    pub boundary_prefix: String,
    /// Answer matching policy for evaluation.
    pub match_policy: MatchPolicy,
    /// Maximum retrieval depth K; instances above it are dropped.
    pub k_max: usize,
    /// Fraction of token occurrences the TF-IDF baseline keeps, in (0, 1].
    pub keep_fraction: f64,
    /// Standard AUC interval, inclusive.
    pub interval_standard: [usize; 2],
    /// Long-tail AUC interval, inclusive.
    pub interval_long: [usize; 2],
    /// Worker threads for batch processing; 0 means one per CPU.
    pub workers: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            alpha: 0.3,
            selection_mode: SelectionMode::HighOnly,
            boundary_prefix: crate::entropy::DEFAULT_BOUNDARY_PREFIX.to_string(),
            match_policy: MatchPolicy::Substring,
            k_max: 10,
            keep_fraction: 0.5,
            interval_standard: [1, 10],
            interval_long: [6, 10],
            workers: 0,
        }
    }
}

/// A partial layer: every knob optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub alpha: Option<f64>,
    pub selection_mode: Option<SelectionMode>,
    pub boundary_prefix: Option<String>,
    pub match_policy: Option<MatchPolicy>,
    pub k_max: Option<usize>,
    pub keep_fraction: Option<f64>,
    pub interval_standard: Option<[usize; 2]>,
    pub interval_long: Option<[usize; 2]>,
    pub workers: Option<usize>,
}

fn parse_env<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| ConfigError::Env {
        key: key.to_string(),
        message: e.to_string(),
    })
}

impl ConfigLayer {
    /// Reads a layer from TOML text. Unknown keys are rejected.
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Toml(e.to_string()))
    }

    /// Builds a layer from `AMRD_*` environment variables. Any iterator of
    /// key/value pairs works, so tests need not touch the process
    /// environment.
    pub fn from_env<I>(vars: I) -> Result<Self, ConfigError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut layer = ConfigLayer::default();
        for (key, value) in vars {
            match key.as_str() {
                "AMRD_ALPHA" => layer.alpha = Some(parse_env(&key, &value)?),
                "AMRD_MODE" => layer.selection_mode = Some(parse_env(&key, &value)?),
                "AMRD_BOUNDARY_PREFIX" => layer.boundary_prefix = Some(value),
                "AMRD_MATCH_POLICY" => layer.match_policy = Some(parse_env(&key, &value)?),
                "AMRD_K_MAX" => layer.k_max = Some(parse_env(&key, &value)?),
                "AMRD_KEEP_FRACTION" => layer.keep_fraction = Some(parse_env(&key, &value)?),
                "AMRD_WORKERS" => layer.workers = Some(parse_env(&key, &value)?),
                _ => {}
            }
        }
        Ok(layer)
    }
}

impl PipelineConfig {
    /// Applies one layer on top of this config.
    pub fn apply(&mut self, layer: ConfigLayer) {
        if let Some(v) = layer.alpha {
            self.alpha = v;
        }
        if let Some(v) = layer.selection_mode {
            self.selection_mode = v;
        }
        if let Some(v) = layer.boundary_prefix {
            self.boundary_prefix = v;
        }
        if let Some(v) = layer.match_policy {
            self.match_policy = v;
        }
        if let Some(v) = layer.k_max {
            self.k_max = v;
        }
        if let Some(v) = layer.keep_fraction {
            self.keep_fraction = v;
        }
        if let Some(v) = layer.interval_standard {
            self.interval_standard = v;
        }
        if let Some(v) = layer.interval_long {
            self.interval_long = v;
        }
        if let Some(v) = layer.workers {
            self.workers = v;
        }
    }

    /// Loads the full chain: defaults, then the optional config file, then
    /// the environment, then the flag layer built by the CLI.
    pub fn load<I>(
        config_path: Option<&Path>,
        env_vars: I,
        flags: ConfigLayer,
    ) -> Result<Self, ConfigError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut config = PipelineConfig::default();
        if let Some(path) = config_path {
            let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
                path: path.display().to_string(),
                source,
            })?;
            config.apply(ConfigLayer::from_toml_str(&text)?);
        }
        config.apply(ConfigLayer::from_env(env_vars)?);
        config.apply(flags);
        config.validate()?;
        Ok(config)
    }

    /// Checks every range invariant.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(ConfigError::Invalid(format!(
                "alpha {} outside (0, 1]",
                self.alpha
            )));
        }
        if !(self.keep_fraction > 0.0 && self.keep_fraction <= 1.0) {
            return Err(ConfigError::Invalid(format!(
                "keep_fraction {} outside (0, 1]",
                self.keep_fraction
            )));
        }
        if self.k_max < 1 {
            return Err(ConfigError::Invalid("k_max must be at least 1".to_string()));
        }
        if self.boundary_prefix.is_empty() {
            return Err(ConfigError::Invalid(
                "boundary_prefix must not be empty".to_string(),
            ));
        }
        for (name, [lo, hi]) in [
            ("interval_standard", self.interval_standard),
            ("interval_long", self.interval_long),
        ] {
            if lo < 1 || lo >= hi || hi > self.k_max {
                return Err(ConfigError::Invalid(format!(
                    "{name} [{lo}, {hi}] must satisfy 1 ≤ lo < hi ≤ k_max ({})",
                    self.k_max
                )));
            }
        }
        Ok(())
    }
}
