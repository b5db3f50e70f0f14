use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use magbb_cli::config::Mode;
use magbb_cli::manifest::SweepVariable;
use magbb_cli::{execute, CliError, ExperimentConfig, Invocation, RunManifest};

/// Magnetic blind beamforming experiments.
#[derive(Debug, Parser)]
#[command(name = "magbb", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// TOML experiment configuration; defaults reproduce the reference setup.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Monte Carlo receivers per policy.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    tx_turns: Option<u32>,
    #[arg(long, global = true)]
    rx_turns: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Design a current set and write it as JSON.
    Design {
        /// constant, orthonormal3, grid or grid<n>
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        n_cv: Option<usize>,
        #[arg(long)]
        distance: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        theta_deg: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        phi_deg: Option<f64>,
    },
    /// Induced-voltage trace over one charging cycle.
    Trace {
        #[arg(long)]
        current_set: PathBuf,
        #[arg(long)]
        distance: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        theta_deg: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        phi_deg: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        orient_theta_deg: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        orient_phi_deg: f64,
    },
    /// Harvested-energy CDFs for one or more policies.
    Mc {
        /// Evaluate these sets instead of designing the configured schemes.
        #[arg(long)]
        current_set: Vec<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        distance: Vec<f64>,
        /// Replay a previous run.
        #[arg(long, conflicts_with_all = ["current_set", "mode", "distance"])]
        manifest: Option<PathBuf>,
    },
    /// Zero-energy probability and median energy over a parameter sweep.
    Sweep {
        #[arg(long, value_enum, required_unless_present = "manifest")]
        variable: Option<SweepVariable>,
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
        #[arg(long)]
        distance: Option<f64>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, conflicts_with_all = ["variable", "values", "distance", "mode"])]
        manifest: Option<PathBuf>,
    },
}

fn load_config(global: &Global) -> Result<ExperimentConfig, CliError> {
    let mut config = match &global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            ExperimentConfig::from_toml(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = global.seed {
        config.seed = seed;
    }
    if let Some(n) = global.samples {
        config.mc_samples = n;
    }
    if let Some(n) = global.tx_turns {
        config.tx.turns = n;
    }
    if let Some(n) = global.rx_turns {
        config.rx.turns = n;
    }
    config.validate()?;
    Ok(config)
}

fn replay(path: &Path, expected: &str) -> Result<(ExperimentConfig, Invocation), CliError> {
    let manifest = RunManifest::read(path)?;
    if manifest.invocation.name() != expected {
        return Err(CliError::Usage(format!(
            "manifest records a `{}` run, not `{expected}`",
            manifest.invocation.name()
        )));
    }
    Ok((manifest.config, manifest.invocation))
}

fn resolve(cli: Cli) -> Result<(ExperimentConfig, Invocation, PathBuf), CliError> {
    let out = cli.global.out.clone();
    let (config, invocation) = match cli.command {
        Command::Mc {
            manifest: Some(path),
            ..
        } => replay(&path, "mc")?,
        Command::Sweep {
            manifest: Some(path),
            ..
        } => replay(&path, "sweep")?,
        command => {
            let config = load_config(&cli.global)?;
            let design = &config.locations[0];
            let default_distance = *config.distances_m.last().unwrap_or(&1.2);
            let invocation = match command {
                Command::Design {
                    scheme,
                    n_cv,
                    distance,
                    theta_deg,
                    phi_deg,
                } => {
                    let scheme = match (scheme.as_str(), n_cv) {
                        ("grid", Some(n)) => format!("grid{n}"),
                        ("grid", None) => {
                            return Err(CliError::Usage("--scheme grid needs --n-cv".into()))
                        }
                        (_, _) => scheme,
                    };
                    Invocation::Design {
                        scheme,
                        distance_m: distance.unwrap_or(default_distance),
                        theta_deg: theta_deg.unwrap_or(design.theta_deg),
                        phi_deg: phi_deg.unwrap_or(design.phi_deg),
                    }
                }
                Command::Trace {
                    current_set,
                    distance,
                    theta_deg,
                    phi_deg,
                    orient_theta_deg,
                    orient_phi_deg,
                } => Invocation::Trace {
                    current_set,
                    distance_m: distance,
                    theta_deg,
                    phi_deg,
                    orient_theta_deg,
                    orient_phi_deg,
                },
                Command::Mc {
                    current_set,
                    mode,
                    distance,
                    ..
                } => Invocation::Mc {
                    current_sets: current_set,
                    mode: mode.unwrap_or(config.mode),
                    distances_m: if distance.is_empty() {
                        config.distances_m.clone()
                    } else {
                        distance
                    },
                },
                Command::Sweep {
                    variable,
                    values,
                    distance,
                    mode,
                    ..
                } => {
                    let variable = variable.expect("clap enforces --variable");
                    let values = values.unwrap_or_else(|| match variable {
                        SweepVariable::Distance => config.distances_m.clone(),
                        SweepVariable::NCv => config.n_cv_sweep.iter().map(|&n| n as f64).collect(),
                    });
                    Invocation::Sweep {
                        variable,
                        values,
                        distance_m: distance.unwrap_or(default_distance),
                        mode: mode.unwrap_or(config.mode),
                    }
                }
            };
            (config, invocation)
        }
    };
    Ok((config, invocation, out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match resolve(cli).and_then(|(config, invocation, out)| execute(&config, &invocation, &out)) {
        Ok(manifest) => {
            for path in &manifest.outputs {
                println!("{}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("magbb: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
