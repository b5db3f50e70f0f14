//! Experiment configuration. Every key carries its unit; missing keys take
//! the reference simulation values.

use magbb::beamform::{DesignParams, Scheme};
use magbb::chargesim::LinkSetup;
use magbb::fieldcore::{CoilSpec, Medium, SphericalLocation};
use magbb::sdpsolve::SolverOptions;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MediumConfig {
    pub frequency_hz: f64,
    pub eps0_f_per_m: f64,
    pub eps_r: f64,
    pub mu0_h_per_m: f64,
    pub mu_r: f64,
}

impl Default for MediumConfig {
    fn default() -> Self {
        let m = Medium::reference_air();
        Self {
            frequency_hz: m.frequency,
            eps0_f_per_m: m.permittivity_vacuum,
            eps_r: m.relative_permittivity,
            mu0_h_per_m: m.permeability_vacuum,
            mu_r: m.relative_permeability,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoilConfig {
    pub radius_m: f64,
    pub turns: u32,
    pub resistance_ohm: f64,
}

impl From<CoilSpec> for CoilConfig {
    fn from(c: CoilSpec) -> Self {
        Self {
            radius_m: c.radius,
            turns: c.turns,
            resistance_ohm: c.resistance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocationConfig {
    pub name: String,
    pub theta_deg: f64,
    pub phi_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Receivers at the design location with random orientation.
    Fixed,
    /// Receivers uniformly on the sphere at the given distance.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub medium: MediumConfig,
    pub tx: CoilConfig,
    pub rx: CoilConfig,
    pub p_max_w: f64,
    pub v_th_v: f64,
    /// Harvested power is `|v|² / (load_factor · r_r)`.
    pub load_factor: f64,
    pub cycle_s: f64,
    pub distances_m: Vec<f64>,
    /// The first entry is the design location.
    pub locations: Vec<LocationConfig>,
    /// `constant`, `orthonormal3` or `grid<n>`.
    pub schemes: Vec<String>,
    pub n_cv_sweep: Vec<usize>,
    pub mc_samples: usize,
    pub mode: Mode,
    pub seed: u64,
    pub full_power: bool,
    pub sdp_tolerance: f64,
    pub sdp_max_iterations: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let loc = |name: &str, theta_deg, phi_deg| LocationConfig {
            name: name.into(),
            theta_deg,
            phi_deg,
        };
        Self {
            medium: MediumConfig::default(),
            tx: CoilSpec::reference_transmitter().into(),
            rx: CoilSpec::reference_receiver().into(),
            p_max_w: 50.0,
            v_th_v: 0.2,
            load_factor: 8.0,
            cycle_s: 60.0,
            distances_m: vec![0.6, 1.2],
            locations: vec![
                loc("optimized", 180.0, 0.0),
                loc("location1", 0.021, 108.84),
                loc("location2", 33.53, 124.4),
            ],
            schemes: [
                "constant",
                "orthonormal3",
                "grid4",
                "grid8",
                "grid36",
                "grid100",
            ]
            .map(String::from)
            .to_vec(),
            n_cv_sweep: vec![4, 8, 36, 100],
            mc_samples: 10_000,
            mode: Mode::Fixed,
            seed: 42,
            full_power: true,
            sdp_tolerance: SolverOptions::default().tolerance,
            sdp_max_iterations: SolverOptions::default().max_iterations,
        }
    }
}

pub fn parse_scheme(label: &str) -> Result<Scheme, CliError> {
    match label {
        "constant" => Ok(Scheme::Constant),
        "orthonormal3" => Ok(Scheme::Orthonormal3),
        other => other
            .strip_prefix("grid")
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .map(|n_cv| Scheme::Grid { n_cv })
            .ok_or_else(|| CliError::Usage(format!("unknown scheme `{other}`"))),
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: Self =
            toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.mc_samples < 1 {
            return usage("mc_samples must be >= 1".into());
        }
        if let Some(d) = self
            .distances_m
            .iter()
            .find(|d| !(d.is_finite() && **d > 0.0))
        {
            return usage(format!("distances_m: every distance must be > 0, got {d}"));
        }
        if self.locations.is_empty() {
            return usage("locations: at least the design location is required".into());
        }
        for s in &self.schemes {
            parse_scheme(s)?;
        }
        if !(self.load_factor.is_finite() && self.load_factor > 0.0) {
            return usage(format!("load_factor must be > 0, got {}", self.load_factor));
        }
        if !(self.cycle_s.is_finite() && self.cycle_s > 0.0) {
            return usage(format!("cycle_s must be > 0, got {}", self.cycle_s));
        }
        self.design_params()?;
        Ok(())
    }

    pub fn schemes(&self) -> Result<Vec<Scheme>, CliError> {
        self.schemes.iter().map(|s| parse_scheme(s)).collect()
    }

    pub fn medium(&self) -> Result<Medium, CliError> {
        let m = &self.medium;
        Ok(Medium::new(
            m.eps0_f_per_m,
            m.eps_r,
            m.mu0_h_per_m,
            m.mu_r,
            m.frequency_hz,
        )?)
    }

    pub fn tx(&self) -> Result<CoilSpec, CliError> {
        Ok(CoilSpec::new(
            self.tx.radius_m,
            self.tx.turns,
            self.tx.resistance_ohm,
        )?)
    }

    pub fn rx(&self) -> Result<CoilSpec, CliError> {
        Ok(CoilSpec::new(
            self.rx.radius_m,
            self.rx.turns,
            self.rx.resistance_ohm,
        )?)
    }

    pub fn design_params(&self) -> Result<DesignParams, CliError> {
        if !(self.p_max_w.is_finite() && self.p_max_w > 0.0) {
            return Err(CliError::Usage(format!(
                "p_max_w must be > 0, got {}",
                self.p_max_w
            )));
        }
        if !(self.v_th_v.is_finite() && self.v_th_v >= 0.0) {
            return Err(CliError::Usage(format!(
                "v_th_v must be >= 0, got {}",
                self.v_th_v
            )));
        }
        Ok(DesignParams {
            tx: self.tx()?,
            rx: self.rx()?,
            medium: self.medium()?,
            p_max: self.p_max_w,
            v_th: self.v_th_v,
            full_power: self.full_power,
            solver: SolverOptions {
                tolerance: self.sdp_tolerance,
                max_iterations: self.sdp_max_iterations,
                ..SolverOptions::default()
            },
        })
    }

    pub fn link(&self) -> Result<LinkSetup, CliError> {
        Ok(LinkSetup {
            tx: self.tx()?,
            medium: self.medium()?,
            v_th: self.v_th_v,
            load_factor: self.load_factor,
        })
    }

    /// The design location at range `r`.
    pub fn design_location(&self, r: f64) -> Result<SphericalLocation, CliError> {
        let l = &self.locations[0];
        Ok(SphericalLocation::from_degrees(r, l.theta_deg, l.phi_deg)?)
    }
}
