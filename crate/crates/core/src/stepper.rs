//! Crank–Nicolson time stepping with the reaction term linearized about
//! the previous level.
//!
//! Collocating at `x_m`, `m = 0..N`, gives
//!
//! ```text
//! χ₁ δ_{m-1}^{n+1} + χ₂ δ_m^{n+1} + χ₁ δ_{m+1}^{n+1}
//!     = χ₃ δ_{m-1}^n + χ₄ δ_m^n + χ₃ δ_{m+1}^n
//! ```
//!
//! with `K = U^n(x_m)` frozen in `χ₁`, `χ₂`. The Dirichlet data at the new
//! level eliminate `δ_{-1}` and `δ_{N+1}`, leaving a tridiagonal system in
//! `δ_0 .. δ_N`.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::basis::{NodalWeights, UniformMesh};
use crate::error::{Error, Result};
use crate::field::{fit_initial, nodal_values, CoefficientVector, FisherProblem};
use crate::tridiag::{thomas_solve, TridiagonalSystem};

/// How the quadratic term enters the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Linearization {
    /// `(U²)^{n+1} ≈ 2 U^n U^{n+1} − (U^n)²` with the `(U^n)²` parts
    /// cancelling, as in the χ coefficients above.
    #[default]
    AsPrinted,
    /// Same left-hand side, plus an extra `β (U^n)²` on the right.
    Rederived,
}

/// The frozen reaction coefficient at a node: `K = U^n`.
#[inline]
pub fn linearized_reaction(u_prev: f64) -> f64 {
    u_prev
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepCoefficients {
    pub chi1: Vec<f64>,
    pub chi2: Vec<f64>,
    pub chi3: f64,
    pub chi4: f64,
    pub k: Vec<f64>,
}

impl StepCoefficients {
    pub fn new(
        delta_n: &CoefficientVector,
        w: &NodalWeights,
        lambda: f64,
        beta: f64,
        dt: f64,
    ) -> Result<Self> {
        delta_n.check_weights(w)?;
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidConfig("time step must be positive"));
        }
        if !(lambda.is_finite() && beta.is_finite()) {
            return Err(Error::NonFinite("equation parameters"));
        }
        let k: Vec<f64> = nodal_values(delta_n.as_slice(), w)
            .into_iter()
            .map(linearized_reaction)
            .collect();
        let inv = 2.0 / dt;
        let (chi1, chi2) = k
            .iter()
            .map(|&k| {
                let c = inv - beta + 2.0 * beta * k;
                (c * w.alpha1 - lambda * w.gamma1, c * w.alpha2 - lambda * w.gamma2)
            })
            .unzip();
        Ok(Self {
            chi1,
            chi2,
            chi3: (inv + beta) * w.alpha1 + lambda * w.gamma1,
            chi4: (inv + beta) * w.alpha2 + lambda * w.gamma2,
            k,
        })
    }
}

/// Builds the `(N+1)`-row system for `δ_0^{n+1} .. δ_N^{n+1}`, with the
/// boundary values at `t_next` folded into the first and last rows.
pub fn assemble_step(
    delta_n: &CoefficientVector,
    w: &NodalWeights,
    problem: &FisherProblem,
    dt: f64,
    t_next: f64,
    linearization: Linearization,
) -> Result<TridiagonalSystem> {
    let coef = StepCoefficients::new(delta_n, w, problem.lambda, problem.beta, dt)?;
    let (left, right) = boundary_values(problem, t_next)?;
    Ok(assemble_with(&coef, delta_n.as_slice(), w, problem.beta, left, right, linearization))
}

fn boundary_values(problem: &FisherProblem, t: f64) -> Result<(f64, f64)> {
    let left = (problem.g_left)(t);
    let right = (problem.g_right)(t);
    if left.is_finite() && right.is_finite() {
        Ok((left, right))
    } else {
        Err(Error::NonFinite("boundary value"))
    }
}

fn assemble_with(
    coef: &StepCoefficients,
    delta: &[f64],
    w: &NodalWeights,
    beta: f64,
    left: f64,
    right: f64,
    linearization: Linearization,
) -> TridiagonalSystem {
    let rows = coef.k.len();
    let mut rhs: Vec<f64> = delta
        .windows(3)
        .map(|d| coef.chi3 * d[0] + coef.chi4 * d[1] + coef.chi3 * d[2])
        .collect();
    if linearization == Linearization::Rederived {
        for (r, k) in rhs.iter_mut().zip(&coef.k) {
            *r += beta * k * k;
        }
    }
    let mut sys = TridiagonalSystem {
        sub: coef.chi1.clone(),
        diag: coef.chi2.clone(),
        sup: coef.chi1.clone(),
        rhs,
    };

    let ratio = w.alpha2 / w.alpha1;
    // δ_{-1} = (U_0 − α₂ δ_0 − α₁ δ_1) / α₁; the δ_1 terms cancel exactly.
    let first = coef.chi1[0];
    sys.diag[0] -= first * ratio;
    sys.sup[0] = 0.0;
    sys.rhs[0] -= first * left / w.alpha1;
    let last = rows - 1;
    let chi_last = coef.chi1[last];
    sys.diag[last] -= chi_last * ratio;
    sys.sub[last] = 0.0;
    sys.rhs[last] -= chi_last * right / w.alpha1;

    sys.sub[0] = 0.0;
    sys.sup[last] = 0.0;
    sys
}

/// Advances `delta_n` to the level at `t_next`.
pub fn step(
    delta_n: &CoefficientVector,
    w: &NodalWeights,
    problem: &FisherProblem,
    dt: f64,
    t_next: f64,
    linearization: Linearization,
) -> Result<CoefficientVector> {
    let coef = StepCoefficients::new(delta_n, w, problem.lambda, problem.beta, dt)?;
    let (left, right) = boundary_values(problem, t_next)?;
    let sys = assemble_with(&coef, delta_n.as_slice(), w, problem.beta, left, right, linearization);
    let inner = thomas_solve(&sys)?;

    let rows = inner.len();
    let mut next = Vec::with_capacity(rows + 2);
    next.push((left - w.alpha2 * inner[0] - w.alpha1 * inner[1]) / w.alpha1);
    next.extend_from_slice(&inner);
    next.push((right - w.alpha1 * inner[rows - 2] - w.alpha2 * inner[rows - 1]) / w.alpha1);
    CoefficientVector::from_key(delta_n.mesh_key(), next)
}

/// Time step, final time, and the times at which to keep the solution.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub dt: f64,
    pub t_final: f64,
    pub report_times: Vec<f64>,
    pub linearization: Linearization,
}

impl SolverConfig {
    pub fn new(dt: f64, t_final: f64, report_times: Vec<f64>) -> Result<Self> {
        let cfg = Self {
            dt,
            t_final,
            report_times,
            linearization: Linearization::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_linearization(mut self, linearization: Linearization) -> Self {
        self.linearization = linearization;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidConfig("time step must be positive"));
        }
        if !(self.t_final.is_finite() && self.t_final >= 0.0) {
            return Err(Error::InvalidConfig("final time must be non-negative"));
        }
        level_of(self.t_final, self.dt)
            .ok_or(Error::InvalidConfig("final time is not a multiple of dt"))?;
        if self.report_times.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::InvalidConfig("report times must be strictly increasing"));
        }
        for &t in &self.report_times {
            if !(t >= 0.0) || t > self.t_final * (1.0 + 1e-9) {
                return Err(Error::InvalidConfig("report time outside [0, t_final]"));
            }
            level_of(t, self.dt)
                .ok_or(Error::InvalidConfig("report time is not a multiple of dt"))?;
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        libm::round(self.t_final / self.dt) as usize
    }
}

fn level_of(t: f64, dt: f64) -> Option<usize> {
    let ratio = t / dt;
    let level = libm::round(ratio);
    ((ratio - level).abs() <= 1e-9 * level.max(1.0)).then_some(level as usize)
}

/// The solution kept at one report time.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub level: usize,
    /// `U_N` at `x_0 .. x_N`.
    pub values: Vec<f64>,
    pub coefficients: CoefficientVector,
    /// Nodal values one step earlier; `None` at `t = 0`.
    pub previous: Option<Vec<f64>>,
}

/// Fits the initial condition and marches to `t_final`, keeping a snapshot
/// at every report time (or only at `t_final` when none are given).
pub fn run(
    problem: &FisherProblem,
    mesh: &UniformMesh,
    w: &NodalWeights,
    config: &SolverConfig,
) -> Result<Vec<Snapshot>> {
    config.validate()?;
    if !problem.is_compatible(mesh) {
        return Err(Error::InvalidConfig(
            "initial condition does not match the boundary data at t = 0",
        ));
    }
    let reports: Vec<(f64, usize)> = if config.report_times.is_empty() {
        alloc::vec![(config.t_final, config.steps())]
    } else {
        config
            .report_times
            .iter()
            .map(|&t| (t, libm::round(t / config.dt) as usize))
            .collect()
    };

    let mut delta = fit_initial(problem, mesh, w)?;
    let mut values = nodal_values(delta.as_slice(), w);
    let mut previous = None;
    let mut out = Vec::with_capacity(reports.len());
    let mut pending = reports.into_iter().peekable();

    let mut level = 0usize;
    loop {
        while let Some(&(t, _)) = pending.peek().filter(|(_, l)| *l == level) {
            out.push(Snapshot {
                t,
                level,
                values: values.clone(),
                coefficients: delta.clone(),
                previous: previous.clone(),
            });
            pending.next();
        }
        if pending.peek().is_none() {
            break;
        }
        let t_next = (level + 1) as f64 * config.dt;
        delta = step(&delta, w, problem, config.dt, t_next, config.linearization).map_err(
            |e| Error::StepFailed {
                level: level + 1,
                t: t_next,
                source: Box::new(e),
            },
        )?;
        previous = Some(core::mem::replace(&mut values, nodal_values(delta.as_slice(), w)));
        level += 1;
    }
    Ok(out)
}
