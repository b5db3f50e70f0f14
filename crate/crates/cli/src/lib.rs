//! Experiment runner for magnetic blind beamforming: configuration,
//! current-set files, charging traces, Monte Carlo CDFs and sweeps.

pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;
pub mod output;

pub use commands::execute;
pub use config::ExperimentConfig;
pub use error::CliError;
pub use manifest::{Invocation, RunManifest};
