//! Run configuration: presets, flag parsing and `key = value` config files.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Parser;
use tcb_fisher::Linearization;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Table2,
    Table3,
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Custom,
}

impl Preset {
    pub const ALL: [Preset; 9] = [
        Preset::Table2,
        Preset::Table3,
        Preset::Fig1,
        Preset::Fig2,
        Preset::Fig3,
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6,
        Preset::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Table2 => "table2",
            Preset::Table3 => "table3",
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::Custom => "custom",
        }
    }
}

impl FromStr for Preset {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown preset `{s}`")))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which initial condition the run starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    /// Travelling wave with u → 1 on the left and u → 0 on the right.
    Wave,
    /// `sech²(10x)` pulse decaying to zero on both sides.
    Pulse,
}

impl FromStr for ProblemKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "wave" => Ok(ProblemKind::Wave),
            "pulse" => Ok(ProblemKind::Pulse),
            _ => Err(CliError::Config(format!(
                "unknown problem `{s}` (expected wave or pulse)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcMode {
    /// Dirichlet data sampled from the exact solution at each new level.
    ExactSampled,
    /// Boundary values frozen at their initial values.
    Constant,
}

impl FromStr for BcMode {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "exact-sampled" => Ok(BcMode::ExactSampled),
            "constant" => Ok(BcMode::Constant),
            _ => Err(CliError::Config(format!(
                "unknown bc mode `{s}` (expected exact-sampled or constant)"
            ))),
        }
    }
}

pub fn parse_linearization(s: &str) -> Result<Linearization, CliError> {
    match s {
        "as-printed" => Ok(Linearization::AsPrinted),
        "re-derived" => Ok(Linearization::Rederived),
        _ => Err(CliError::Config(format!(
            "unknown linearization `{s}` (expected as-printed or re-derived)"
        ))),
    }
}

pub fn linearization_name(l: Linearization) -> &'static str {
    match l {
        Linearization::AsPrinted => "as-printed",
        Linearization::Rederived => "re-derived",
    }
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub preset: Preset,
    pub problem: ProblemKind,
    pub lambda: f64,
    pub beta: f64,
    pub domain: (f64, f64),
    pub n: usize,
    pub dt: f64,
    pub t_final: f64,
    pub report_times: Vec<f64>,
    pub linearization: Linearization,
    pub bc_mode: BcMode,
    pub output_path: PathBuf,
    /// Profiles are clipped to this interval when set.
    pub window: Option<(f64, f64)>,
}

impl RunConfig {
    /// Parameters of a named preset, written to `output`.
    ///
    /// `table3` uses `h = 0.005` on `[-50, 50]` (N = 20000). The table header
    /// quotes N = 64, which cannot resolve the width-0.1 initial pulse on a
    /// width-100 domain.
    pub fn preset(preset: Preset, output: PathBuf) -> Option<Self> {
        let wave = |beta: f64, report_times: Vec<f64>| RunConfig {
            preset,
            problem: ProblemKind::Wave,
            lambda: 1.0,
            beta,
            domain: (-0.2, 0.8),
            n: 40,
            dt: 1e-4,
            t_final: *report_times.last().unwrap(),
            report_times,
            linearization: Linearization::AsPrinted,
            bc_mode: BcMode::ExactSampled,
            output_path: output.clone(),
            window: None,
        };
        let pulse = |report_times: Vec<f64>, window: Option<(f64, f64)>| RunConfig {
            preset,
            problem: ProblemKind::Pulse,
            lambda: 0.1,
            beta: 1.0,
            domain: (-50.0, 50.0),
            n: 20_000,
            dt: 0.05,
            t_final: *report_times.last().unwrap(),
            report_times,
            linearization: Linearization::AsPrinted,
            bc_mode: BcMode::Constant,
            output_path: output.clone(),
            window,
        };
        let cfg = match preset {
            Preset::Table2 => RunConfig {
                domain: (-0.2, 1.06),
                n: 64,
                dt: 5e-6,
                ..wave(1e4, vec![0.0005, 0.0015, 0.0025, 0.0035])
            },
            Preset::Table3 => pulse(vec![5.0, 10.0, 15.0, 20.0, 40.0], None),
            Preset::Fig1 => wave(2000.0, vec![0.0, 0.002, 0.004, 0.006, 0.008]),
            Preset::Fig2 => wave(5000.0, vec![0.0, 0.001, 0.002, 0.003, 0.004, 0.005]),
            Preset::Fig3 => wave(1e4, vec![0.0, 0.001, 0.002, 0.003]),
            Preset::Fig4 => pulse(vec![0.1, 0.2, 0.3, 0.4, 0.5], Some((-2.0, 2.0))),
            Preset::Fig5 => pulse(vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0], Some((-6.0, 6.0))),
            Preset::Fig6 => pulse((0..=8).map(|k| 5.0 * k as f64).collect(), None),
            Preset::Custom => return None,
        };
        Some(cfg)
    }

    fn resolve(preset: Preset, s: &Settings) -> Result<Self, CliError> {
        let output = s.output.clone().unwrap_or_else(|| PathBuf::from("out"));
        let mut cfg = match RunConfig::preset(preset, output.clone()) {
            Some(cfg) => cfg,
            None => {
                let missing: Vec<&str> = [
                    ("lambda", s.lambda.is_none()),
                    ("beta", s.beta.is_none()),
                    ("domain", s.domain.is_none()),
                    ("n", s.n.is_none()),
                    ("dt", s.dt.is_none()),
                    ("t-final", s.t_final.is_none()),
                ]
                .into_iter()
                .filter_map(|(name, absent)| absent.then_some(name))
                .collect();
                if !missing.is_empty() {
                    return Err(CliError::Config(format!(
                        "custom preset needs --{}",
                        missing.join(", --")
                    )));
                }
                let t_final = s.t_final.unwrap();
                RunConfig {
                    preset,
                    problem: ProblemKind::Wave,
                    lambda: s.lambda.unwrap(),
                    beta: s.beta.unwrap(),
                    domain: s.domain.unwrap(),
                    n: s.n.unwrap(),
                    dt: s.dt.unwrap(),
                    t_final,
                    report_times: vec![t_final],
                    linearization: Linearization::AsPrinted,
                    bc_mode: BcMode::ExactSampled,
                    output_path: output,
                    window: None,
                }
            }
        };
        if let Some(v) = s.problem {
            cfg.problem = v;
        }
        if let Some(v) = s.lambda {
            cfg.lambda = v;
        }
        if let Some(v) = s.beta {
            cfg.beta = v;
        }
        if let Some(v) = s.domain {
            cfg.domain = v;
        }
        if let Some(v) = s.n {
            cfg.n = v;
        }
        if let Some(v) = s.dt {
            cfg.dt = v;
        }
        if let Some(v) = s.t_final {
            cfg.t_final = v;
            if s.report_times.is_none() {
                cfg.report_times.retain(|&t| t <= v);
                if cfg.report_times.last() != Some(&v) {
                    cfg.report_times.push(v);
                }
            }
        }
        if let Some(v) = &s.report_times {
            cfg.report_times = v.clone();
        }
        if let Some(v) = s.linearization {
            cfg.linearization = v;
        }
        if let Some(v) = s.bc_mode {
            cfg.bc_mode = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: &str| Err(CliError::Config(msg.to_owned()));
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return bad("lambda must be positive");
        }
        if !self.beta.is_finite() {
            return bad("beta must be finite");
        }
        if self.problem == ProblemKind::Wave && self.beta <= 0.0 {
            return bad("the travelling wave needs beta > 0");
        }
        if !(self.domain.0 < self.domain.1) {
            return bad("domain must satisfy a < b");
        }
        tcb_fisher::SolverConfig {
            dt: self.dt,
            t_final: self.t_final,
            report_times: self.report_times.clone(),
            linearization: self.linearization,
        }
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))
    }
}

/// Command-line flags. Every value may also come from `--config FILE`;
/// flags win.
#[derive(Debug, Parser)]
#[command(name = "tcb-fisher", version, about = "Trigonometric B-spline collocation solver for Fisher's equation")]
pub struct Cli {
    /// Preset to run; repeat or comma-separate to run several concurrently
    /// (table2, table3, fig1..fig6, custom)
    #[arg(long, value_delimiter = ',')]
    pub preset: Vec<String>,
    /// Initial condition for custom runs (wave | pulse)
    #[arg(long)]
    pub problem: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<String>,
    /// Domain as `a,b`
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    /// Number of subintervals
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub dt: Option<String>,
    #[arg(long)]
    pub t_final: Option<String>,
    /// Comma-separated report times
    #[arg(long)]
    pub report_times: Option<String>,
    /// as-printed | re-derived
    #[arg(long)]
    pub linearization: Option<String>,
    /// exact-sampled | constant
    #[arg(long)]
    pub bc_mode: Option<String>,
    /// Output directory
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Flat `key = value` file with `#` comments
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Partially specified settings, from a file or from flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub presets: Vec<Preset>,
    pub problem: Option<ProblemKind>,
    pub lambda: Option<f64>,
    pub beta: Option<f64>,
    pub domain: Option<(f64, f64)>,
    pub n: Option<usize>,
    pub dt: Option<f64>,
    pub t_final: Option<f64>,
    pub report_times: Option<Vec<f64>>,
    pub linearization: Option<Linearization>,
    pub bc_mode: Option<BcMode>,
    pub output: Option<PathBuf>,
}

impl Settings {
    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key.replace('_', "-").as_str() {
            "preset" => {
                self.presets = value
                    .split(',')
                    .map(|p| p.trim().parse())
                    .collect::<Result<_, _>>()?;
            }
            "problem" => self.problem = Some(value.parse()?),
            "lambda" => self.lambda = Some(number(key, value)?),
            "beta" => self.beta = Some(number(key, value)?),
            "domain" => {
                let v = list(key, value)?;
                if v.len() != 2 {
                    return Err(CliError::Config(format!(
                        "domain needs two values `a,b`, got `{value}`"
                    )));
                }
                self.domain = Some((v[0], v[1]));
            }
            "n" => {
                self.n = Some(value.trim().parse().map_err(|_| {
                    CliError::Config(format!("n: `{value}` is not a non-negative integer"))
                })?)
            }
            "dt" => self.dt = Some(number(key, value)?),
            "t-final" => self.t_final = Some(number(key, value)?),
            "report-times" => self.report_times = Some(list(key, value)?),
            "linearization" => self.linearization = Some(parse_linearization(value.trim())?),
            "bc-mode" => self.bc_mode = Some(value.trim().parse()?),
            "output" => self.output = Some(PathBuf::from(value.trim())),
            _ => return Err(CliError::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Values from `other` replace ours where present.
    fn overlay(mut self, other: Settings) -> Settings {
        if !other.presets.is_empty() {
            self.presets = other.presets;
        }
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(problem, lambda, beta, domain, n, dt, t_final, report_times, linearization, bc_mode, output);
        self
    }

    pub fn from_config_text(text: &str) -> Result<Settings, CliError> {
        let mut s = Settings::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            s.set(key.trim(), value.trim())
                .map_err(|e| CliError::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(s)
    }

    pub fn from_config_file(path: &Path) -> Result<Settings, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Settings::from_config_text(&text)
    }

    fn from_cli(cli: &Cli) -> Result<Settings, CliError> {
        let mut s = Settings::default();
        if !cli.preset.is_empty() {
            s.set("preset", &cli.preset.join(","))?;
        }
        let pairs = [
            ("problem", &cli.problem),
            ("lambda", &cli.lambda),
            ("beta", &cli.beta),
            ("domain", &cli.domain),
            ("n", &cli.n),
            ("dt", &cli.dt),
            ("t-final", &cli.t_final),
            ("report-times", &cli.report_times),
            ("linearization", &cli.linearization),
            ("bc-mode", &cli.bc_mode),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                s.set(key, v)?;
            }
        }
        s.output = cli.output.clone();
        Ok(s)
    }
}

fn number(key: &str, value: &str) -> Result<f64, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("{key}: `{value}` is not a number")))
}

fn list(key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    value.split(',').map(|v| number(key, v)).collect()
}

/// Parses flags (without the program name) plus an optional config file
/// into one resolved [`RunConfig`] per requested preset.
pub fn parse_config<I, T>(args: I) -> Result<Vec<RunConfig>, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("tcb-fisher"))
        .chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(CliError::from)?;
    resolve_cli(&cli)
}

pub fn resolve_cli(cli: &Cli) -> Result<Vec<RunConfig>, CliError> {
    let file = match &cli.config {
        Some(path) => Settings::from_config_file(path)?,
        None => Settings::default(),
    };
    let settings = file.overlay(Settings::from_cli(cli)?);
    if settings.presets.is_empty() {
        return Err(CliError::Config("no preset given (use --preset)".into()));
    }
    settings
        .presets
        .iter()
        .map(|&p| RunConfig::resolve(p, &settings))
        .collect()
}
