//! The audit configuration file: one TOML document describing corpora,
//! pipeline, boosting parameters, seed range, and outputs. Command-line
//! flags override file values; the fully resolved configuration is written
//! into every output directory so runs can be reproduced from artifacts
//! alone.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use textstab_core::gbt::GbtParams;
use textstab_core::pipeline::{PipelineConfig, Preset};
use textstab_core::stability::{SweepConfig, DEFAULT_REFERENCE_PRECISION};
use textstab_core::stopwords::StopwordList;

use crate::io::LabelMapping;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {message}")]
    Parse { path: String, message: String },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("config sets both `preset` and an explicit [pipeline] table; pick one")]
    PresetAndPipeline,
    #[error("referenced file does not exist: {0}")]
    MissingFile(PathBuf),
    #[error("invalid value: {0}")]
    Invalid(String),
}

/// Seed range and split settings, `[sweep]` in the file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub seed_start: u64,
    pub seed_end: u64,
    pub train_fraction: f64,
    pub reference_precision: Option<f64>,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            seed_start: 1,
            seed_end: 1000,
            train_fraction: 0.7,
            reference_precision: Some(DEFAULT_REFERENCE_PRECISION),
        }
    }
}

/// The on-disk configuration. All fields except `labeled` have defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditConfig {
    /// Labeled corpus path (CSV or JSONL).
    pub labeled: PathBuf,
    /// Optional unlabeled corpus for bulk labeling and sparsity comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unlabeled: Option<PathBuf>,
    /// Optional stopword list override (plain text, one term per line).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stopwords: Option<PathBuf>,
    /// Named preset; mutually exclusive with `pipeline`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// Explicit pipeline configuration; mutually exclusive with `preset`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PipelineConfig>,
    #[serde(default)]
    pub gbt: GbtParams,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub labels: LabelMapping,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    /// Sweep worker threads; 0 means one per logical CPU.
    #[serde(default)]
    pub workers: usize,
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

/// Flag values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seeds: Option<(u64, u64)>,
    pub preset: Option<String>,
    pub fraction: Option<f64>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
}

impl AuditConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| ConfigError::Parse {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }

    /// Apply flag overrides (flags win) and validate.
    pub fn resolve(mut self, overrides: &Overrides) -> Result<Self, ConfigError> {
        if let Some((start, end)) = overrides.seeds {
            self.sweep.seed_start = start;
            self.sweep.seed_end = end;
        }
        if let Some(preset) = &overrides.preset {
            self.preset = Some(preset.clone());
            self.pipeline = None;
        }
        if let Some(fraction) = overrides.fraction {
            self.sweep.train_fraction = fraction;
        }
        if let Some(workers) = overrides.workers {
            self.workers = workers;
        }
        if let Some(out) = &overrides.out {
            self.out_dir = out.clone();
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.preset.is_some() && self.pipeline.is_some() {
            return Err(ConfigError::PresetAndPipeline);
        }
        if let Some(name) = &self.preset {
            Preset::from_name(name).ok_or_else(|| ConfigError::UnknownPreset(name.clone()))?;
        }
        if let Some(pipeline) = &self.pipeline {
            pipeline
                .validate()
                .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        }
        self.gbt
            .validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if self.sweep.seed_end < self.sweep.seed_start {
            return Err(ConfigError::Invalid(format!(
                "empty seed range {}..{}",
                self.sweep.seed_start, self.sweep.seed_end
            )));
        }
        if !(self.sweep.train_fraction > 0.0 && self.sweep.train_fraction < 1.0) {
            return Err(ConfigError::Invalid(format!(
                "train_fraction must be in (0,1), got {}",
                self.sweep.train_fraction
            )));
        }
        for path in [Some(&self.labeled), self.unlabeled.as_ref(), self.stopwords.as_ref()]
            .into_iter()
            .flatten()
        {
            if !path.exists() {
                return Err(ConfigError::MissingFile(path.clone()));
            }
        }
        Ok(())
    }

    /// The concrete pipeline this config denotes (preset, explicit table, or
    /// the baseline when neither is given).
    pub fn pipeline_config(&self) -> PipelineConfig {
        if let Some(pipeline) = &self.pipeline {
            return pipeline.clone();
        }
        match &self.preset {
            Some(name) => Preset::from_name(name)
                .expect("validated preset name")
                .config(),
            None => PipelineConfig::baseline(),
        }
    }

    pub fn stopword_list(&self) -> Result<StopwordList, ConfigError> {
        match &self.stopwords {
            None => Ok(StopwordList::english()),
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
                    path: path.display().to_string(),
                    source,
                })?;
                StopwordList::parse(&text, &path.display().to_string())
                    .map_err(|e| ConfigError::Invalid(e.to_string()))
            }
        }
    }

    pub fn sweep_config(&self) -> SweepConfig {
        SweepConfig {
            seed_start: self.sweep.seed_start,
            seed_end: self.sweep.seed_end,
            pipeline: self.pipeline_config(),
            gbt: self.gbt.clone(),
            train_fraction: self.sweep.train_fraction,
            reference_precision: self.sweep.reference_precision,
        }
    }

    /// Canonical TOML rendering, written next to run outputs.
    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }
}
