//! Trigonometric cubic B-spline basis on a uniform mesh.
//!
//! `CTB_i` is supported on `[x_{i-2}, x_{i+2}]` and built from half-angle
//! sine factors
//!
//! ```text
//! ω(x_j) = sin((x - x_j) / 2),   φ(x_j) = sin((x_j - x) / 2)
//! ```
//!
//! normalized by `θ = sin(h/2) sin(h) sin(3h/2)`. The same functions come
//! out of the order recursion started from the order-1 indicators; on a
//! uniform mesh the recursion denominators multiply to exactly `θ`, so
//! `T_{i-2}^4 = CTB_i`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, sin, tan};

use crate::error::{Error, Result};

/// Number of extension knots kept on each side of `[a, b]`.
pub const EXTENSION: usize = 3;

/// Identifies the mesh a coefficient vector was built on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshKey {
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub h: f64,
}

/// Uniform partition `a = x_0 < ... < x_N = b` with three extra knots on
/// either side, `x_{-3} .. x_{N+3}`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformMesh {
    a: f64,
    b: f64,
    n: usize,
    h: f64,
    theta: f64,
    knots: Vec<f64>,
}

impl UniformMesh {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(Error::DegenerateInterval { a, b });
        }
        if n < 3 {
            return Err(Error::TooFewIntervals(n));
        }
        let h = (b - a) / n as f64;
        check_spacing(h)?;

        let ext = EXTENSION as isize;
        let last = n as isize;
        let knots = (-ext..=last + ext)
            .map(|i| {
                if i < last {
                    a + i as f64 * h
                } else {
                    // anchored at b so that x_N == b exactly
                    b + (i - last) as f64 * h
                }
            })
            .collect();
        let theta = sin(h / 2.0) * sin(h) * sin(1.5 * h);
        Ok(Self {
            a,
            b,
            n,
            h,
            theta,
            knots,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Number of subintervals `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn key(&self) -> MeshKey {
        MeshKey {
            a: self.a,
            b: self.b,
            n: self.n,
            h: self.h,
        }
    }

    /// Knot `x_i` for `-3 <= i <= N+3`.
    pub fn knot(&self, i: isize) -> Result<f64> {
        self.knot_index(i)
            .map(|k| self.knots[k])
            .ok_or(Error::KnotIndexOutOfRange(i))
    }

    /// All knots `x_{-3} .. x_{N+3}`.
    pub fn extended_knots(&self) -> &[f64] {
        &self.knots
    }

    /// Collocation nodes `x_0 .. x_N`.
    pub fn nodes(&self) -> &[f64] {
        &self.knots[EXTENSION..EXTENSION + self.n + 1]
    }

    fn knot_index(&self, i: isize) -> Option<usize> {
        let k = i + EXTENSION as isize;
        (k >= 0 && (k as usize) < self.knots.len()).then_some(k as usize)
    }

    // Unchecked access for indices already validated by the caller.
    #[inline]
    fn x(&self, i: isize) -> f64 {
        self.knots[(i + EXTENSION as isize) as usize]
    }
}

fn check_spacing(h: f64) -> Result<()> {
    if h.is_finite() && h > 0.0 && h < 2.0 * PI / 3.0 {
        Ok(())
    } else {
        Err(Error::SpacingOutOfRange(h))
    }
}

/// Value, first and second derivative of the basis at the knots.
///
/// For `CTB_i`: value `alpha1` at `x_{i±1}` and `alpha2` at `x_i`; slope
/// `beta2` at `x_{i-1}` and `beta1` at `x_{i+1}`; curvature `gamma1` at
/// `x_{i±1}` and `gamma2` at `x_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodalWeights {
    pub h: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub theta: f64,
}

impl NodalWeights {
    pub fn new(h: f64) -> Result<Self> {
        check_spacing(h)?;
        let (s_half, s_one, s_three_half) = (sin(h / 2.0), sin(h), sin(1.5 * h));
        let (c_half, c_one, c_three_half) = (cos(h / 2.0), cos(h), cos(1.5 * h));

        let alpha1 = s_half * s_half / (s_one * s_three_half);
        let alpha2 = 2.0 / (1.0 + 2.0 * c_one);
        let beta2 = 0.75 / s_three_half;
        let gamma1 =
            3.0 * (1.0 + 3.0 * c_one) / (s_half * s_half * 16.0 * (2.0 * c_half + c_three_half));
        // cot²(h/2), not cot²(3h/2): the latter disagrees with the second
        // derivative of the piecewise form by an order of magnitude.
        let cot_half = 1.0 / tan(h / 2.0);
        let gamma2 = -3.0 * cot_half * cot_half / (2.0 + 4.0 * c_one);

        Ok(Self {
            h,
            alpha1,
            alpha2,
            beta1: -beta2,
            beta2,
            gamma1,
            gamma2,
            theta: s_half * s_one * s_three_half,
        })
    }

    /// `2α₁ + α₂`, the knot value of a spline with all coefficients 1.
    pub fn partition_sum(&self) -> f64 {
        2.0 * self.alpha1 + self.alpha2
    }
}

fn check_basis_index(mesh: &UniformMesh, i: isize) -> Result<()> {
    let max = mesh.n as isize + 1;
    if (-1..=max).contains(&i) {
        Ok(())
    } else {
        Err(Error::BasisIndexOutOfRange { index: i, max })
    }
}

/// `CTB_i(x)` from the four-branch closed form, `-1 <= i <= N+1`.
pub fn eval_piecewise(mesh: &UniformMesh, i: isize, x: f64) -> Result<f64> {
    check_basis_index(mesh, i)?;
    if !x.is_finite() {
        return Err(Error::NonFinite("x"));
    }
    Ok(piecewise_unchecked(mesh, i, x))
}

pub(crate) fn piecewise_unchecked(mesh: &UniformMesh, i: isize, x: f64) -> f64 {
    let k = |j: isize| mesh.x(i + j);
    if x < k(-2) || x > k(2) {
        return 0.0;
    }
    let w = |j: isize| sin((x - k(j)) / 2.0);
    let p = |j: isize| sin((k(j) - x) / 2.0);

    let value = if x <= k(-1) {
        let w2 = w(-2);
        w2 * w2 * w2
    } else if x <= k(0) {
        let (wm2, wm1) = (w(-2), w(-1));
        wm2 * (wm2 * p(0) + p(1) * wm1) + p(2) * wm1 * wm1
    } else if x <= k(1) {
        let (p1, p2) = (p(1), p(2));
        w(-2) * p1 * p1 + p2 * (w(-1) * p1 + p2 * w(0))
    } else {
        let p2 = p(2);
        p2 * p2 * p2
    };
    value / mesh.theta
}

/// Order-`k` trigonometric B-spline `T_j^k(x)` on the knots `x_j .. x_{j+k}`
/// by the order recursion. Supports `k` in `1..=4`; `T_{i-2}^4 = CTB_i`.
///
/// The order-1 pieces are the half-open indicators of `[x_j, x_{j+1})`,
/// closed only at the last extended knot.
pub fn eval_recursive(mesh: &UniformMesh, j: isize, k: usize, x: f64) -> Result<f64> {
    if !(1..=4).contains(&k) {
        return Err(Error::InvalidOrder(k));
    }
    mesh.knot(j)?;
    mesh.knot(j + k as isize)?;
    if !x.is_finite() {
        return Err(Error::NonFinite("x"));
    }
    Ok(recursive_unchecked(mesh, j, k, x))
}

fn recursive_unchecked(mesh: &UniformMesh, j: isize, k: usize, x: f64) -> f64 {
    if k == 1 {
        let (lo, hi) = (mesh.x(j), mesh.x(j + 1));
        let last = mesh.knots.len() as isize - 1 - EXTENSION as isize;
        let inside = (lo <= x && x < hi) || (j + 1 == last && x == hi);
        return if inside { 1.0 } else { 0.0 };
    }
    let k_i = k as isize;
    let left = {
        let denom = sin((mesh.x(j + k_i - 1) - mesh.x(j)) / 2.0);
        sin((x - mesh.x(j)) / 2.0) / denom * recursive_unchecked(mesh, j, k - 1, x)
    };
    let right = {
        let denom = sin((mesh.x(j + k_i) - mesh.x(j + 1)) / 2.0);
        sin((mesh.x(j + k_i) - x) / 2.0) / denom * recursive_unchecked(mesh, j + 1, k - 1, x)
    };
    left + right
}
