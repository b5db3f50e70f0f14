use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use magbb::beamform::{design_set, CurrentSet, CurrentSetDocument, Scheme};
use magbb::chargesim::{
    monte_carlo, voltage_trace, ChargingPolicy, EnergyCdf, ReceiverSample, SamplingMode,
};
use magbb::fieldcore::{Orientation, SphericalLocation};

use crate::config::{parse_scheme, ExperimentConfig, Mode};
use crate::error::CliError;
use crate::manifest::{Invocation, RunManifest, SweepVariable, MANIFEST_FILE};
use crate::output::{self, write_atomic, SweepRow};

pub const CURRENT_SET_FILE: &str = "current_set.json";
pub const TRACE_FILE: &str = "trace.csv";
pub const CDF_FILE: &str = "cdf.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const SWEEP_FILE: &str = "sweep.csv";

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Runs one invocation, writes its outputs into `out` and then the manifest.
pub fn execute(
    config: &ExperimentConfig,
    invocation: &Invocation,
    out: &Path,
) -> Result<RunManifest, CliError> {
    config.validate()?;
    let started_unix_s = unix_now();
    let outputs = match invocation {
        Invocation::Design {
            scheme,
            distance_m,
            theta_deg,
            phi_deg,
        } => {
            let loc = SphericalLocation::from_degrees(*distance_m, *theta_deg, *phi_deg)?;
            let set = design_set(
                &loc,
                parse_scheme(scheme)?,
                &config.design_params()?,
                config.seed,
            )?;
            let path = out.join(CURRENT_SET_FILE);
            write_current_set(&path, &set)?;
            vec![path]
        }
        Invocation::Trace {
            current_set,
            distance_m,
            theta_deg,
            phi_deg,
            orient_theta_deg,
            orient_phi_deg,
        } => {
            let set = read_current_set(current_set)?;
            let d = set.design_location;
            let loc = SphericalLocation::from_degrees(
                distance_m.unwrap_or(d.range),
                theta_deg.unwrap_or(d.polar_deg()),
                phi_deg.unwrap_or(d.azimuth_deg()),
            )?;
            let rx = ReceiverSample {
                location: loc,
                orientation: Orientation::from_degrees(*orient_theta_deg, *orient_phi_deg),
                rx_coil: config.rx()?,
            };
            let policy = ChargingPolicy::new(set, config.cycle_s)?;
            let trace = voltage_trace(&policy, &rx, &config.link()?)?;
            let path = out.join(TRACE_FILE);
            write_atomic(&path, output::trace_csv(&trace).as_bytes())?;
            vec![path]
        }
        Invocation::Mc {
            current_sets,
            mode,
            distances_m,
        } => {
            let groups = run_mc(config, current_sets, *mode, distances_m)?;
            let cdf = out.join(CDF_FILE);
            let summary = out.join(SUMMARY_FILE);
            write_atomic(&cdf, output::cdf_csv(&groups).as_bytes())?;
            write_atomic(&summary, output::summary_csv(&groups).as_bytes())?;
            vec![cdf, summary]
        }
        Invocation::Sweep {
            variable,
            values,
            distance_m,
            mode,
        } => {
            let rows = run_sweep(config, *variable, values, *distance_m, *mode)?;
            let path = out.join(SWEEP_FILE);
            write_atomic(&path, output::sweep_csv(&rows).as_bytes())?;
            vec![path]
        }
    };
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: config.seed,
        started_unix_s,
        finished_unix_s: unix_now(),
        invocation: invocation.clone(),
        config: config.clone(),
        outputs,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_atomic(&out.join(MANIFEST_FILE), text.as_bytes())?;
    Ok(manifest)
}

pub fn write_current_set(path: &Path, set: &CurrentSet) -> Result<(), CliError> {
    let doc = CurrentSetDocument::from_set(set);
    let text = serde_json::to_string_pretty(&doc).expect("current set serializes");
    write_atomic(path, text.as_bytes())
}

pub fn read_current_set(path: &Path) -> Result<CurrentSet, CliError> {
    let parse = |detail: String| CliError::Parse {
        path: path.into(),
        detail,
    };
    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    let doc: CurrentSetDocument = serde_path_to_error::deserialize(&mut de)
        .map_err(|e| parse(format!("field `{}`: {}", e.path(), e.inner())))?;
    doc.to_set().map_err(|e| parse(e.to_string()))
}

fn sampling_mode(mode: Mode, loc: SphericalLocation) -> SamplingMode {
    match mode {
        Mode::Fixed => SamplingMode::FixedLocation(loc),
        Mode::Random => SamplingMode::RandomLocation { range: loc.range },
    }
}

fn evaluate(config: &ExperimentConfig, set: CurrentSet, mode: Mode) -> Result<EnergyCdf, CliError> {
    let loc = set.design_location;
    let policy = ChargingPolicy::new(set, config.cycle_s)?;
    Ok(monte_carlo(
        &policy,
        config.mc_samples,
        &sampling_mode(mode, loc),
        config.seed,
        &config.rx()?,
        &config.link()?,
    )?)
}

fn designed(
    config: &ExperimentConfig,
    scheme: Scheme,
    distance: f64,
) -> Result<CurrentSet, CliError> {
    let loc = config.design_location(distance)?;
    Ok(design_set(
        &loc,
        scheme,
        &config.design_params()?,
        config.seed,
    )?)
}

/// One CDF per policy. Loaded sets are evaluated at their own design
/// location; otherwise every configured scheme is designed at every distance.
pub fn run_mc(
    config: &ExperimentConfig,
    current_sets: &[PathBuf],
    mode: Mode,
    distances_m: &[f64],
) -> Result<Vec<(String, EnergyCdf)>, CliError> {
    let mut groups = Vec::new();
    if !current_sets.is_empty() {
        for path in current_sets {
            let set = read_current_set(path)?;
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| set.scheme.label());
            groups.push((label, evaluate(config, set, mode)?));
        }
        return Ok(groups);
    }
    if distances_m.is_empty() {
        return Err(CliError::Usage("mc needs at least one distance".into()));
    }
    for &d in distances_m {
        for scheme in config.schemes()? {
            let set = designed(config, scheme, d)?;
            groups.push((
                format!("{}@{d}m", scheme.label()),
                evaluate(config, set, mode)?,
            ));
        }
    }
    Ok(groups)
}

pub fn run_sweep(
    config: &ExperimentConfig,
    variable: SweepVariable,
    values: &[f64],
    distance_m: f64,
    mode: Mode,
) -> Result<Vec<SweepRow>, CliError> {
    if values.len() < 2 {
        return Err(CliError::Usage(format!(
            "a sweep needs at least 2 values, got {}",
            values.len()
        )));
    }
    let mut rows = Vec::new();
    match variable {
        SweepVariable::Distance => {
            for &d in values {
                if !(d.is_finite() && d > 0.0) {
                    return Err(CliError::Usage(format!(
                        "sweep distance must be > 0, got {d}"
                    )));
                }
                for scheme in config.schemes()? {
                    let cdf = evaluate(config, designed(config, scheme, d)?, mode)?;
                    rows.push(SweepRow {
                        variable: "distance_m",
                        value: d,
                        policy: scheme.label(),
                        cdf,
                    });
                }
            }
        }
        SweepVariable::NCv => {
            for &v in values {
                if !(v >= 1.0 && v.fract() == 0.0) {
                    return Err(CliError::Usage(format!(
                        "n_cv must be a positive integer, got {v}"
                    )));
                }
                let scheme = Scheme::Grid { n_cv: v as usize };
                let cdf = evaluate(config, designed(config, scheme, distance_m)?, mode)?;
                rows.push(SweepRow {
                    variable: "n_cv",
                    value: v,
                    policy: scheme.label(),
                    cdf,
                });
            }
        }
    }
    Ok(rows)
}
