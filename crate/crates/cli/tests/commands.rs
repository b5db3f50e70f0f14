use std::path::Path;
use std::process::{Command, Output};

use magbb::beamform::{recompute_diagnostics, DesignParams};
use magbb::fieldcore::channel_matrix;
use magbb_cli::commands::read_current_set;

fn magbb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magbb"))
        .args(args)
        .output()
        .unwrap()
}

fn design(out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["design", "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    magbb(&args)
}

fn lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(String::from)
        .collect()
}

#[test]
fn constant_design_has_one_vector_and_flat_trace() {
    let dir = tempfile::tempdir().unwrap();
    assert!(design(dir.path(), &["--scheme", "constant"])
        .status
        .success());
    let set_path = dir.path().join("current_set.json");
    assert_eq!(read_current_set(&set_path).unwrap().n_cv(), 1);
    assert!(dir.path().join("manifest.json").exists());

    let trace_dir = dir.path().join("trace");
    let out = magbb(&[
        "trace",
        "--current-set",
        set_path.to_str().unwrap(),
        "--theta-deg",
        "0.021",
        "--phi-deg",
        "108.84",
        "--out",
        trace_dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = lines(&trace_dir.join("trace.csv"));
    assert_eq!(rows[0], "t_s,v_abs_V,above_threshold");
    assert_eq!(rows.len(), 2);
}

#[test]
fn grid_design_round_trips_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    assert!(design(dir.path(), &["--scheme", "grid", "--n-cv", "36"])
        .status
        .success());
    let set = read_current_set(&dir.path().join("current_set.json")).unwrap();
    assert_eq!(set.n_cv(), 36);
    let params = DesignParams::default();
    let channel = channel_matrix(&params.tx, &params.medium, &set.design_location).unwrap();
    for v in &set.vectors {
        let stored = v.diagnostics.unwrap();
        let (err, volts) = recompute_diagnostics(&channel, v, &params);
        assert!((err - stored.alignment_error).abs() < 1e-9);
        assert!((volts - stored.target_voltage).abs() < 1e-9);
        assert!(v.power(1.0) <= 100.0 * (1.0 + 1e-6));
    }

    let trace_dir = dir.path().join("trace");
    let set_path = dir.path().join("current_set.json");
    magbb(&[
        "trace",
        "--current-set",
        set_path.to_str().unwrap(),
        "--out",
        trace_dir.to_str().unwrap(),
    ]);
    assert_eq!(lines(&trace_dir.join("trace.csv")).len(), 37);
}

#[test]
fn orthonormal_design_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        assert!(
            design(dir.path(), &["--scheme", "orthonormal3", "--seed", "9"])
                .status
                .success()
        );
    }
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("current_set.json")).unwrap();
    assert_eq!(read(&a), read(&b));
}

#[test]
fn mc_writes_one_group_per_policy() {
    let dir = tempfile::tempdir().unwrap();
    let sets = dir.path().join("sets");
    let mut paths = Vec::new();
    for scheme in ["constant", "grid4"] {
        let d = sets.join(scheme);
        assert!(design(&d, &["--scheme", scheme]).status.success());
        let p = sets.join(format!("{scheme}.json"));
        std::fs::rename(d.join("current_set.json"), &p).unwrap();
        paths.push(p);
    }
    let out = dir.path().join("mc");
    let status = magbb(&[
        "mc",
        "--samples",
        "500",
        "--current-set",
        paths[0].to_str().unwrap(),
        "--current-set",
        paths[1].to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let cdf = lines(&out.join("cdf.csv"));
    assert_eq!(cdf[0], "policy,energy_J,cdf");
    assert_eq!(cdf.len(), 1 + 2 * 500);
    assert!(cdf.last().unwrap().ends_with(",1"));
    let summary = lines(&out.join("summary.csv"));
    assert_eq!(summary[0], "policy,zero_probability,q50_J");
    assert!(summary[1].starts_with("constant,"));
    assert!(summary[2].starts_with("grid4,"));
}

#[test]
fn distance_sweep_has_rows_per_policy() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(
        &cfg,
        "schemes = [\"constant\", \"grid8\"]\nmc_samples = 300\n",
    )
    .unwrap();
    let out = dir.path().join("sweep");
    let status = magbb(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--variable",
        "distance",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let rows = lines(&out.join("sweep.csv"));
    assert_eq!(rows[0], "variable,value,policy,zero_probability,q50_J");
    assert_eq!(rows.len(), 1 + 2 * 2);
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();

    let single = magbb(&[
        "sweep",
        "--variable",
        "distance",
        "--values",
        "1.2",
        "--out",
        out,
    ]);
    assert_eq!(single.status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"scheme":"grid","n_cv":1,"seed":0,"design_location":{"r_m":1.2,"theta_deg":0,"phi_deg":0},"vectors":[{"target":{"theta_deg":0,"phi_deg":0},"i_re":[1,0],"i_im":[0,0,0],"diagnostics":null}]}"#).unwrap();
    let parse = magbb(&[
        "trace",
        "--current-set",
        bad.to_str().unwrap(),
        "--out",
        out,
    ]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("i_re"));

    let unwritable = design(Path::new("/proc/magbb-denied"), &["--scheme", "constant"]);
    assert_eq!(unwritable.status.code(), Some(4));

    let missing_config = magbb(&[
        "design",
        "--scheme",
        "grid4",
        "--out",
        out,
        "--config",
        "/nonexistent.toml",
    ]);
    assert_eq!(missing_config.status.code(), Some(4));
}
