use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Mode};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Distance,
    NCv,
}

/// A fully resolved command, enough to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Invocation {
    Design {
        scheme: String,
        distance_m: f64,
        theta_deg: f64,
        phi_deg: f64,
    },
    Trace {
        current_set: PathBuf,
        distance_m: Option<f64>,
        theta_deg: Option<f64>,
        phi_deg: Option<f64>,
        orient_theta_deg: f64,
        orient_phi_deg: f64,
    },
    Mc {
        current_sets: Vec<PathBuf>,
        mode: Mode,
        distances_m: Vec<f64>,
    },
    Sweep {
        variable: SweepVariable,
        values: Vec<f64>,
        distance_m: f64,
        mode: Mode,
    },
}

impl Invocation {
    pub fn name(&self) -> &'static str {
        match self {
            Invocation::Design { .. } => "design",
            Invocation::Trace { .. } => "trace",
            Invocation::Mc { .. } => "mc",
            Invocation::Sweep { .. } => "sweep",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub seed: u64,
    pub started_unix_s: u64,
    pub finished_unix_s: u64,
    pub invocation: Invocation,
    pub config: ExperimentConfig,
    pub outputs: Vec<PathBuf>,
}

pub const MANIFEST_FILE: &str = "manifest.json";

impl RunManifest {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
        let manifest: Self = serde_json::from_str(&text).map_err(|e| CliError::Parse {
            path: path.into(),
            detail: e.to_string(),
        })?;
        manifest.config.validate()?;
        Ok(manifest)
    }
}
