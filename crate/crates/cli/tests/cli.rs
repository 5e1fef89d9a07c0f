use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn tcb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcb-fisher")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn custom_args(dir: &Path) -> Vec<String> {
    [
        "--preset", "custom", "--lambda", "1", "--beta", "1", "--domain", "-10,10", "--n", "64",
        "--dt", "0.01", "--t-final", "0", "--output",
    ]
    .iter()
    .map(|s| s.to_string())
    .chain([dir.display().to_string()])
    .collect()
}

#[test]
fn custom_run_at_time_zero() {
    let dir = tempfile::tempdir().unwrap();
    let args = custom_args(dir.path());
    let out = tcb(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let profile = fs::read_to_string(dir.path().join("custom_profile_t0.csv")).unwrap();
    let mut lines = profile.lines();
    assert_eq!(lines.next(), Some("x,u_numeric,u_exact,abs_error"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 65);
    // the fit interpolates the initial condition at every node
    assert!(rows.iter().all(|r| r[3] <= 1e-10));

    let summary = fs::read_to_string(dir.path().join("custom_summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 2);
    assert!(summary.lines().nth(1).unwrap().ends_with(','), "{summary}");
}

#[test]
fn output_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [a.path(), b.path()] {
        let out = tcb(&["--preset", "fig1,fig4", "--output", dir.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 5 + 1 + 5 + 1);
    for name in names {
        let x = fs::read(a.path().join(&name)).unwrap();
        let y = fs::read(b.path().join(&name)).unwrap();
        assert_eq!(x, y, "{name:?}");
    }
}

#[test]
fn fig4_profile_is_clipped_to_its_window() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&tcb(&["--preset", "fig4", "--output", dir.path().to_str().unwrap()])), 0);
    let profile = fs::read_to_string(dir.path().join("fig4_profile_t0.1.csv")).unwrap();
    let xs: Vec<f64> = profile.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(xs.len(), 801);
    assert!((xs[0] + 2.0).abs() < 1e-9 && (xs[800] - 2.0).abs() < 1e-9);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# wave run\npreset = fig1\nreport_times = 0.001, 0.002\nt_final = 0.002\n").unwrap();
    let out = tcb(&[
        "--config",
        cfg.to_str().unwrap(),
        "--report-times",
        "0.002",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("fig1_profile_t0.002.csv").exists());
    assert!(!dir.path().join("fig1_profile_t0.001.csv").exists());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&tcb(&["--help"])), 0);
    assert_eq!(code(&tcb(&["--version"])), 0);

    let missing = tcb(&["--preset", "custom"]);
    assert_eq!(code(&missing), 1);
    let msg = String::from_utf8_lossy(&missing.stderr);
    assert!(msg.contains("--lambda") && msg.contains("--t-final"), "{msg}");
    assert_eq!(code(&tcb(&["--preset", "table2", "--dt", "abc"])), 1);
    assert_eq!(code(&tcb(&["--preset", "table2", "--frobnicate"])), 1);
    assert_eq!(code(&tcb(&["--config", "/nonexistent/run.cfg"])), 1);

    // three subintervals over [0, 10] is too coarse for the basis
    let dir = tempfile::tempdir().unwrap();
    let coarse = tcb(&[
        "--preset", "custom", "--lambda", "1", "--beta", "1", "--domain", "0,10", "--n", "3",
        "--dt", "0.1", "--t-final", "0.1", "--output", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&coarse), 2);

    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let io = tcb(&["--preset", "fig1", "--output", blocker.join("out").to_str().unwrap()]);
    assert_eq!(code(&io), 3);
}
