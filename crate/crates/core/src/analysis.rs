//! Exact solutions, error norms and observed convergence orders.

use libm::{exp, log, sqrt};

use crate::error::{Error, Result};

/// Accuracy of one snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub t: f64,
    /// Max nodal error; `None` without an exact solution.
    pub linf: Option<f64>,
    /// Change relative to the previous time level; `None` at `t = 0`.
    pub relative: Option<f64>,
    pub n: usize,
    pub dt: f64,
}

/// Travelling wave `(1 + exp(√(β/6) x − 5β t / 6))^{-2}`, an exact solution
/// for `λ = 1`. Tends to 1 as `x → −∞` and to 0 as `x → +∞`.
pub fn exact_wave(x: f64, t: f64, beta: f64) -> f64 {
    let e = exp(sqrt(beta / 6.0) * x - 5.0 * beta * t / 6.0);
    let s = 1.0 + e;
    1.0 / (s * s)
}

/// `∂/∂x` of [`exact_wave`].
pub fn exact_wave_dx(x: f64, t: f64, beta: f64) -> f64 {
    let k = sqrt(beta / 6.0);
    let e = exp(k * x - 5.0 * beta * t / 6.0);
    if !e.is_finite() {
        return 0.0;
    }
    let s = 1.0 + e;
    -2.0 * k * e / (s * s * s)
}

/// `sech²(10 x)`.
pub fn sech2_pulse(x: f64) -> f64 {
    let e = exp(-20.0 * x.abs());
    let s = 1.0 + e;
    4.0 * e / (s * s)
}

/// `d/dx sech²(10 x) = −20 sech²(10 x) tanh(10 x)`.
pub fn sech2_pulse_dx(x: f64) -> f64 {
    -20.0 * sech2_pulse(x) * libm::tanh(10.0 * x)
}

pub fn linf_error(numeric: &[f64], exact: &[f64]) -> Result<f64> {
    if numeric.len() != exact.len() {
        return Err(Error::LengthMismatch {
            expected: exact.len(),
            found: numeric.len(),
        });
    }
    Ok(numeric
        .iter()
        .zip(exact)
        .map(|(u, e)| (u - e).abs())
        .fold(0.0, f64::max))
}

/// `sqrt(Σ (u_next − u_prev)² / Σ u_prev²)`.
pub fn relative_change(u_next: &[f64], u_prev: &[f64]) -> Result<f64> {
    if u_next.len() != u_prev.len() {
        return Err(Error::LengthMismatch {
            expected: u_prev.len(),
            found: u_next.len(),
        });
    }
    let (num, den) = u_next
        .iter()
        .zip(u_prev)
        .fold((0.0, 0.0), |(num, den), (a, b)| {
            let d = a - b;
            (num + d * d, den + b * b)
        });
    if den == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(sqrt(num / den))
}

/// Least-squares slope of `log(error)` against `log(step)`.
pub fn convergence_order(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints(points.len()));
    }
    if points.iter().any(|&(s, e)| !(s > 0.0 && e > 0.0)) {
        return Err(Error::InvalidConfig("steps and errors must be positive"));
    }
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(sx, sy), &(s, e)| (sx + log(s), sy + log(e)));
    let (mx, my) = (sx / n, sy / n);
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(sxy, sxx), &(s, e)| {
        let dx = log(s) - mx;
        (sxy + dx * (log(e) - my), sxx + dx * dx)
    });
    if sxx == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(sxy / sxx)
}
