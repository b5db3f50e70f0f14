//! Atomic file output and CSV formatting.
//!
//! Numbers are written with `f64`'s `Display`, which prints the shortest
//! decimal that round-trips and never depends on locale.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use magbb::chargesim::{EnergyCdf, TracePoint};

use crate::error::CliError;

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).map_err(CliError::io(&tmp))?;
    fs::rename(&tmp, path).map_err(CliError::io(path))
}

pub fn cdf_csv(groups: &[(String, EnergyCdf)]) -> String {
    let mut out = String::from("policy,energy_J,cdf\n");
    for (policy, cdf) in groups {
        for (energy, p) in cdf.steps() {
            writeln!(out, "{policy},{energy},{p}").unwrap();
        }
    }
    out
}

pub fn summary_csv(groups: &[(String, EnergyCdf)]) -> String {
    let mut out = String::from("policy,zero_probability,q50_J\n");
    for (policy, cdf) in groups {
        writeln!(out, "{policy},{},{}", cdf.zero_probability, cdf.median()).unwrap();
    }
    out
}

pub fn trace_csv(trace: &[TracePoint]) -> String {
    let mut out = String::from("t_s,v_abs_V,above_threshold\n");
    for p in trace {
        writeln!(out, "{},{},{}", p.t_s, p.v_abs, p.above_threshold).unwrap();
    }
    out
}

pub struct SweepRow {
    pub variable: &'static str,
    pub value: f64,
    pub policy: String,
    pub cdf: EnergyCdf,
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("variable,value,policy,zero_probability,q50_J\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.variable,
            r.value,
            r.policy,
            r.cdf.zero_probability,
            r.cdf.median()
        )
        .unwrap();
    }
    out
}
