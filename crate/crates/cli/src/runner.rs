//! Runs a configured preset and writes its outputs.

use std::path::PathBuf;
use std::thread;

use tcb_fisher::analysis::{linf_error, relative_change, ErrorReport};
use tcb_fisher::{run, NodalWeights, SolverConfig, UniformMesh};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{self, Profile};
use crate::problem::{build_problem, exact_solution};

/// Everything a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub config: RunConfig,
    /// Profiles clipped to the preset window, one per report time.
    pub profiles: Vec<Profile>,
    /// Errors over the whole mesh, one per report time.
    pub reports: Vec<ErrorReport>,
    pub files: Vec<PathBuf>,
}

/// Solves without touching the filesystem.
pub fn solve(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    let mesh = UniformMesh::new(cfg.domain.0, cfg.domain.1, cfg.n)?;
    let w = NodalWeights::new(mesh.h())?;
    let problem = build_problem(cfg);
    let solver = SolverConfig::new(cfg.dt, cfg.t_final, cfg.report_times.clone())?
        .with_linearization(cfg.linearization);
    let snapshots = run(&problem, &mesh, &w, &solver)?;
    let exact = exact_solution(cfg);
    let nodes = mesh.nodes();
    let keep = |x: f64| cfg.window.is_none_or(|(lo, hi)| x >= lo - 1e-12 && x <= hi + 1e-12);

    let mut profiles = Vec::with_capacity(snapshots.len());
    let mut reports = Vec::with_capacity(snapshots.len());
    for snap in &snapshots {
        let reference: Option<Vec<f64>> =
            exact.as_ref().map(|u| nodes.iter().map(|&x| u(x, snap.t)).collect());
        let linf = match &reference {
            Some(r) => Some(linf_error(&snap.values, r)?),
            None => None,
        };
        let relative = match &snap.previous {
            Some(prev) => Some(relative_change(&snap.values, prev)?),
            None => None,
        };
        reports.push(ErrorReport { t: snap.t, linf, relative, n: cfg.n, dt: cfg.dt });

        let idx: Vec<usize> = (0..nodes.len()).filter(|&j| keep(nodes[j])).collect();
        profiles.push(Profile {
            t: snap.t,
            x: idx.iter().map(|&j| nodes[j]).collect(),
            numeric: idx.iter().map(|&j| snap.values[j]).collect(),
            exact: reference.map(|r| idx.iter().map(|&j| r[j]).collect()),
        });
    }
    Ok(RunOutcome { config: cfg.clone(), profiles, reports, files: Vec::new() })
}

/// Solves and writes one profile CSV per report time plus a summary CSV.
pub fn run_preset(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    let mut outcome = solve(cfg)?;
    let name = cfg.preset.name();
    for p in &outcome.profiles {
        let file = output::profile_file_name(name, p.t);
        outcome.files.push(output::write_file(&cfg.output_path, &file, &output::profile_csv(p))?);
    }
    let summary = output::summary_csv(&outcome.reports);
    outcome
        .files
        .push(output::write_file(&cfg.output_path, &output::summary_file_name(name), &summary)?);
    Ok(outcome)
}

/// Runs several presets on separate threads, in input order.
pub fn run_all(configs: &[RunConfig]) -> Vec<Result<RunOutcome, CliError>> {
    thread::scope(|s| {
        let handles: Vec<_> = configs.iter().map(|c| s.spawn(move || run_preset(c))).collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
    })
}
