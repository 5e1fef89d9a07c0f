//! Command-line harness for the `tcb-fisher` solver: named presets, config
//! files, and CSV output.

pub mod config;
mod error;
pub mod output;
pub mod problem;
pub mod runner;

pub use config::{parse_config, BcMode, Preset, ProblemKind, RunConfig};
pub use error::CliError;
pub use runner::{run_all, run_preset, solve, RunOutcome};
