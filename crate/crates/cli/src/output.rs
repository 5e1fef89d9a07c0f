//! CSV writers for profiles and error summaries.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use tcb_fisher::analysis::ErrorReport;

use crate::error::CliError;

/// Nodal solution at one report time.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub t: f64,
    pub x: Vec<f64>,
    pub numeric: Vec<f64>,
    pub exact: Option<Vec<f64>>,
}

fn num(v: f64) -> String {
    format!("{v:.11e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn profile_csv(p: &Profile) -> String {
    let mut s = String::from("x,u_numeric,u_exact,abs_error\n");
    for (j, (&x, &u)) in p.x.iter().zip(&p.numeric).enumerate() {
        let exact = p.exact.as_ref().map(|e| e[j]);
        let err = exact.map(|e| (u - e).abs());
        let _ = writeln!(s, "{},{},{},{}", num(x), num(u), opt(exact), opt(err));
    }
    s
}

pub fn summary_csv(reports: &[ErrorReport]) -> String {
    let mut s = String::from("t,linf,relative\n");
    for r in reports {
        let _ = writeln!(s, "{},{},{}", num(r.t), opt(r.linf), opt(r.relative));
    }
    s
}

pub fn profile_file_name(preset: &str, t: f64) -> String {
    format!("{preset}_profile_t{t}.csv")
}

pub fn summary_file_name(preset: &str) -> String {
    format!("{preset}_summary.csv")
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(io(&path))?;
    Ok(path)
}
