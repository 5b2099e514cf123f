//! Run parameters from TOML or JSON files.
//!
//! Keys are the long flag names with dashes replaced by underscores
//! (`tau_max`, not `--tau-max`); enum values use the same kebab-case tokens
//! as the command line. Unknown keys are rejected. Flags always override
//! file entries.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::cli::{CurveArg, ModeArg, ObservableArg, StartArg};
use crate::error::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuenchedFileConfig {
    pub c: Option<f64>,
    pub tau_max: Option<f64>,
    pub tau_steps: Option<usize>,
    pub trajectories: Option<u64>,
    pub seed: Option<u64>,
    pub mode: Option<ModeArg>,
    pub observable: Option<ObservableArg>,
    pub q: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemporalFileConfig {
    pub start: Option<StartArg>,
    pub phi: Option<f64>,
    pub d: Option<f64>,
    pub dt: Option<f64>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub trajectories: Option<u64>,
    pub seed: Option<u64>,
    pub mode: Option<ModeArg>,
    pub observable: Option<ObservableArg>,
    pub q: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HaarFileConfig {
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub observable: Option<ObservableArg>,
    pub q: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryFileConfig {
    pub points: Option<usize>,
    pub h: Option<f64>,
    pub ratio_points: Option<usize>,
    pub volume_samples: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyticFileConfig {
    pub curve: Option<CurveArg>,
    pub tau_max: Option<f64>,
    pub tau_steps: Option<usize>,
}

/// Load a config file, dispatching on the extension. `None` yields the
/// all-defaults config so callers can merge unconditionally.
pub fn load_config<C>(path: Option<&Path>) -> Result<C, CliError>
where
    C: DeserializeOwned + Default,
{
    let Some(path) = path else {
        return Ok(C::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    match ext {
        "toml" => toml::from_str(&text)
            .map_err(|e| CliError::Validation(format!("bad config {}: {e}", path.display()))),
        "json" => serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("bad config {}: {e}", path.display()))),
        other => Err(CliError::Validation(format!(
            "config {} has unsupported extension `{other}`; use .toml or .json",
            path.display()
        ))),
    }
}

/// The merged seed, which the sampling subcommands insist on.
pub fn require_seed(seed: Option<u64>) -> Result<u64, CliError> {
    seed.ok_or_else(|| {
        CliError::Validation(
            "a master seed is required: pass --seed or set `seed` in the config file".into(),
        )
    })
}
