//! Run configuration: a JSON document whose fields can each be overridden
//! on the command line.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use dphls_core::{
    default_params, DistanceMetric, EngineConfig, KernelCatalog, KernelSpec, ParamName, Score,
    ScoreKind, SymbolKind,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::input::InputError;
use crate::matrix::read_matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Align,
    Batch,
    Verify,
    Perf,
    Tile,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.to_owned()))
            .map_err(|_| format!("unknown mode `{s}`"))
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("unit variant");
        f.write_str(v.as_str().expect("string"))
    }
}

/// Engine settings; unset fields keep the engine defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineSettings {
    pub n_pe: Option<usize>,
    pub n_b: Option<usize>,
    pub n_k: Option<usize>,
    pub ii: Option<usize>,
    pub band: Option<usize>,
    pub clock_mhz: Option<f64>,
    pub pipeline_depth: Option<u64>,
    pub fixed_overhead_cycles: Option<u64>,
    pub max_query_length: Option<usize>,
    pub max_reference_length: Option<usize>,
}

impl EngineSettings {
    pub fn to_config(&self) -> EngineConfig {
        let d = EngineConfig::default();
        EngineConfig {
            n_pe: self.n_pe.unwrap_or(d.n_pe),
            n_b: self.n_b.unwrap_or(d.n_b),
            n_k: self.n_k.unwrap_or(d.n_k),
            ii: self.ii.unwrap_or(d.ii),
            band_width: self.band.or(d.band_width),
            clock_mhz: self.clock_mhz.unwrap_or(d.clock_mhz),
            pipeline_depth: self.pipeline_depth.unwrap_or(d.pipeline_depth),
            fixed_overhead_cycles: self.fixed_overhead_cycles.unwrap_or(d.fixed_overhead_cycles),
            max_query_length: self.max_query_length.unwrap_or(d.max_query_length),
            max_reference_length: self.max_reference_length.unwrap_or(d.max_reference_length),
        }
    }

    /// Fields set in `other` replace ours.
    pub fn overlay(&mut self, other: &EngineSettings) {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            n_pe,
            n_b,
            n_k,
            ii,
            band,
            clock_mhz,
            pipeline_depth,
            fixed_overhead_cycles,
            max_query_length,
            max_reference_length
        );
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Option<Mode>,
    pub kernel: Option<String>,
    /// Parameter overrides by name. Matrix-valued parameters name a file.
    pub params: BTreeMap<String, String>,
    pub engine: EngineSettings,
    pub query: Option<PathBuf>,
    pub reference: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub tile: Option<usize>,
    pub overlap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("config: {0}")]
    Invalid(String),
    #[error(transparent)]
    Input(#[from] InputError),
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = crate::input::read_text(path)?;
        let mut cfg = Self::from_json(&text)?;
        // relative paths are relative to the config file
        if let Some(dir) = path.parent() {
            for p in [&mut cfg.query, &mut cfg.reference, &mut cfg.out].into_iter().flatten() {
                if p.is_relative() {
                    *p = dir.join(&*p);
                }
            }
            for (k, v) in cfg.params.iter_mut() {
                let matrix = matches!(k.as_str(), "substitution_matrix" | "emission");
                if matrix && Path::new(v).is_relative() {
                    *v = dir.join(&*v).display().to_string();
                }
            }
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Fields set in `flags` replace ours; parameters merge by name.
    pub fn overlay(&mut self, flags: &RunConfig) {
        macro_rules! take {
            ($($f:ident),*) => { $( if flags.$f.is_some() { self.$f = flags.$f.clone(); } )* };
        }
        take!(mode, kernel, query, reference, out, tile, overlap);
        self.engine.overlay(&flags.engine);
        for (k, v) in &flags.params {
            self.params.insert(k.clone(), v.clone());
        }
    }

    pub fn engine_config(&self) -> EngineConfig {
        self.engine.to_config()
    }

    /// Catalog kernel with default parameters and the configured overrides.
    pub fn kernel_spec(&self) -> Result<KernelSpec, ConfigError> {
        let key = self
            .kernel
            .as_deref()
            .ok_or_else(|| ConfigError::Invalid("no kernel given".into()))?;
        let spec = KernelCatalog::new()
            .lookup(key)
            .ok_or_else(|| ConfigError::Invalid(format!("unknown kernel `{key}`")))?
            .clone();
        let mut params = default_params(spec.id);
        for (k, v) in &self.params {
            let name = ParamName::from_str(k).map_err(ConfigError::Invalid)?;
            let bad = || ConfigError::Invalid(format!("bad value `{v}` for {k}"));
            params = match name {
                ParamName::DistanceMetric => {
                    params.with_metric(DistanceMetric::from_str(v).map_err(|_| bad())?)
                }
                ParamName::SubstitutionMatrix | ParamName::Emission => {
                    let kind = match spec.symbol_kind {
                        SymbolKind::AminoAcid => SymbolKind::AminoAcid,
                        _ => SymbolKind::Nucleotide,
                    };
                    let m = read_matrix(Path::new(v), kind)?;
                    if name == ParamName::Emission {
                        params.with_emission(m)
                    } else {
                        params.with_substitution_matrix(m)
                    }
                }
                scalar => {
                    let value = match spec.score_kind {
                        ScoreKind::Int32Saturating => Score::Int(v.parse().map_err(|_| bad())?),
                        ScoreKind::Float64 => Score::Float(v.parse().map_err(|_| bad())?),
                    };
                    params.with(scalar, value)
                }
            };
        }
        Ok(spec.with_params(params))
    }
}

/// Parses `key=value`.
pub fn parse_param(s: &str) -> Result<(String, String), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    Ok((k.trim().to_owned(), v.trim().to_owned()))
}
