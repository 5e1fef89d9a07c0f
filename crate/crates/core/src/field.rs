//! Spline expansion `U_N(x, t) = Σ_{i=-1}^{N+1} δ_i CTB_i(x)` and the data
//! of the initial-boundary value problem it approximates.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::basis::{piecewise_unchecked, MeshKey, NodalWeights, UniformMesh};
use crate::error::{Error, Result};
use crate::tridiag::{thomas_solve, TridiagonalSystem};

/// Spline coefficients `δ_{-1} .. δ_{N+1}` on a given mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    delta: Vec<f64>,
    mesh: MeshKey,
}

impl CoefficientVector {
    pub fn new(mesh: &UniformMesh, delta: Vec<f64>) -> Result<Self> {
        Self::from_key(mesh.key(), delta)
    }

    pub(crate) fn from_key(mesh: MeshKey, delta: Vec<f64>) -> Result<Self> {
        let expected = mesh.n + 3;
        if delta.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: delta.len(),
            });
        }
        if delta.iter().any(|d| !d.is_finite()) {
            return Err(Error::NonFinite("spline coefficients"));
        }
        Ok(Self { delta, mesh })
    }

    pub fn zeros(mesh: &UniformMesh) -> Self {
        Self {
            delta: vec![0.0; mesh.n() + 3],
            mesh: mesh.key(),
        }
    }

    pub fn constant(mesh: &UniformMesh, value: f64) -> Self {
        Self {
            delta: vec![value; mesh.n() + 3],
            mesh: mesh.key(),
        }
    }

    /// `δ_i` for `-1 <= i <= N+1`.
    pub fn get(&self, i: isize) -> Option<f64> {
        let k = i + 1;
        (k >= 0).then(|| self.delta.get(k as usize).copied()).flatten()
    }

    /// Raw storage; entry `k` holds `δ_{k-1}`.
    pub fn as_slice(&self) -> &[f64] {
        &self.delta
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.delta
    }

    pub fn mesh_key(&self) -> MeshKey {
        self.mesh
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub(crate) fn check_weights(&self, w: &NodalWeights) -> Result<()> {
        if w.h.to_bits() == self.mesh.h.to_bits() {
            Ok(())
        } else {
            Err(Error::MeshMismatch)
        }
    }
}

pub type ScalarFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Fisher's equation `u_t = λ u_xx + β u(1 − u)` on `[a, b]` with an
/// initial profile and Dirichlet data `g_left(t)`, `g_right(t)`.
///
/// `du0_left` / `du0_right` are the initial slopes used as end conditions
/// for the initial fit. When absent they are approximated by one-sided
/// differences of `u0`.
pub struct FisherProblem {
    pub lambda: f64,
    pub beta: f64,
    pub u0: ScalarFn,
    pub g_left: ScalarFn,
    pub g_right: ScalarFn,
    pub du0_left: Option<f64>,
    pub du0_right: Option<f64>,
}

impl FisherProblem {
    pub fn new(
        lambda: f64,
        beta: f64,
        u0: impl Fn(f64) -> f64 + Send + Sync + 'static,
        g_left: impl Fn(f64) -> f64 + Send + Sync + 'static,
        g_right: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            lambda,
            beta,
            u0: Box::new(u0),
            g_left: Box::new(g_left),
            g_right: Box::new(g_right),
            du0_left: None,
            du0_right: None,
        }
    }

    pub fn with_end_slopes(mut self, left: f64, right: f64) -> Self {
        self.du0_left = Some(left);
        self.du0_right = Some(right);
        self
    }

    /// `u0(a) = g_left(0)` and `u0(b) = g_right(0)` to within `1e-8`.
    pub fn is_compatible(&self, mesh: &UniformMesh) -> bool {
        let left = (self.u0)(mesh.a()) - (self.g_left)(0.0);
        let right = (self.u0)(mesh.b()) - (self.g_right)(0.0);
        left.abs() <= 1e-8 && right.abs() <= 1e-8
    }

    fn end_slopes(&self, mesh: &UniformMesh) -> (f64, f64) {
        let step = mesh.h() / 8.0;
        let left = self
            .du0_left
            .unwrap_or_else(|| one_sided_derivative(&self.u0, mesh.a(), step));
        let right = self
            .du0_right
            .unwrap_or_else(|| one_sided_derivative(&self.u0, mesh.b(), -step));
        (left, right)
    }
}

impl fmt::Debug for FisherProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FisherProblem")
            .field("lambda", &self.lambda)
            .field("beta", &self.beta)
            .field("du0_left", &self.du0_left)
            .field("du0_right", &self.du0_right)
            .finish_non_exhaustive()
    }
}

/// Fourth-order one-sided difference; a positive `step` looks right of `x`,
/// a negative one looks left.
pub fn one_sided_derivative(f: impl Fn(f64) -> f64, x: f64, step: f64) -> f64 {
    const W: [f64; 5] = [-25.0, 48.0, -36.0, 16.0, -3.0];
    let sum: f64 = W
        .iter()
        .enumerate()
        .map(|(k, w)| w * f(x + k as f64 * step))
        .sum();
    sum / (12.0 * step)
}

/// `U`, `U'`, `U''` at the collocation nodes `x_0 .. x_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotValues {
    pub values: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

pub fn knot_values(delta: &CoefficientVector, w: &NodalWeights) -> Result<KnotValues> {
    delta.check_weights(w)?;
    let d = &delta.delta;
    let nodes = d.len() - 2;
    let mut out = KnotValues {
        values: Vec::with_capacity(nodes),
        d1: Vec::with_capacity(nodes),
        d2: Vec::with_capacity(nodes),
    };
    for win in d.windows(3) {
        let (l, c, r) = (win[0], win[1], win[2]);
        out.values.push(w.alpha1 * l + w.alpha2 * c + w.alpha1 * r);
        out.d1.push(w.beta1 * l + w.beta2 * r);
        out.d2.push(w.gamma1 * l + w.gamma2 * c + w.gamma1 * r);
    }
    Ok(out)
}

/// Nodal values only; the hot path of the time stepper.
pub(crate) fn nodal_values(delta: &[f64], w: &NodalWeights) -> Vec<f64> {
    delta
        .windows(3)
        .map(|d| w.alpha1 * d[0] + w.alpha2 * d[1] + w.alpha1 * d[2])
        .collect()
}

/// `U_N(x)` for `a <= x <= b`, summing the (at most four) basis functions
/// whose support contains `x`.
pub fn eval_at(delta: &CoefficientVector, mesh: &UniformMesh, x: f64) -> Result<f64> {
    if delta.mesh != mesh.key() {
        return Err(Error::MeshMismatch);
    }
    if !(x >= mesh.a() && x <= mesh.b()) {
        return Err(Error::OutsideDomain {
            x,
            a: mesh.a(),
            b: mesh.b(),
        });
    }
    let n = mesh.n() as isize;
    let cell = (((x - mesh.a()) / mesh.h()) as isize).clamp(0, n - 1);
    let sum = (cell - 1..=cell + 2)
        .filter(|i| (-1..=n + 1).contains(i))
        .map(|i| delta.delta[(i + 1) as usize] * piecewise_unchecked(mesh, i, x))
        .sum();
    Ok(sum)
}

/// Coefficients whose knot values interpolate `u0` at `x_0 .. x_N` and whose
/// end slopes match `u0'(a)`, `u0'(b)`.
///
/// The two slope rows are used to eliminate `δ_{-1}` and `δ_{N+1}`, leaving
/// an `(N+1)`-row tridiagonal system.
pub fn fit_initial(
    problem: &FisherProblem,
    mesh: &UniformMesh,
    w: &NodalWeights,
) -> Result<CoefficientVector> {
    if w.h.to_bits() != mesh.h().to_bits() {
        return Err(Error::MeshMismatch);
    }
    let (slope_left, slope_right) = problem.end_slopes(mesh);
    let rhs: Vec<f64> = mesh.nodes().iter().map(|&x| (problem.u0)(x)).collect();
    if rhs.iter().any(|v| !v.is_finite()) || !(slope_left.is_finite() && slope_right.is_finite())
    {
        return Err(Error::NonFinite("initial condition"));
    }
    fit_nodal(mesh, w, rhs, slope_left, slope_right)
}

pub(crate) fn fit_nodal(
    mesh: &UniformMesh,
    w: &NodalWeights,
    mut rhs: Vec<f64>,
    slope_left: f64,
    slope_right: f64,
) -> Result<CoefficientVector> {
    let rows = mesh.n() + 1;
    let mut sys = TridiagonalSystem {
        sub: vec![w.alpha1; rows],
        diag: vec![w.alpha2; rows],
        sup: vec![w.alpha1; rows],
        rhs: Vec::new(),
    };
    sys.sub[0] = 0.0;
    sys.sup[rows - 1] = 0.0;

    // δ_{-1} = (u'(a) − β₂ δ_1) / β₁
    sys.sup[0] -= w.alpha1 * w.beta2 / w.beta1;
    rhs[0] -= w.alpha1 * slope_left / w.beta1;
    // δ_{N+1} = (u'(b) − β₁ δ_{N-1}) / β₂
    sys.sub[rows - 1] -= w.alpha1 * w.beta1 / w.beta2;
    rhs[rows - 1] -= w.alpha1 * slope_right / w.beta2;
    sys.rhs = rhs;

    let inner = thomas_solve(&sys)?;
    let mut delta = Vec::with_capacity(rows + 2);
    delta.push((slope_left - w.beta2 * inner[1]) / w.beta1);
    delta.extend_from_slice(&inner);
    delta.push((slope_right - w.beta1 * inner[rows - 2]) / w.beta2);
    CoefficientVector::new(mesh, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::sech2_pulse;
    use approx::assert_relative_eq;

    fn setup(a: f64, b: f64, n: usize) -> (UniformMesh, NodalWeights) {
        let m = UniformMesh::new(a, b, n).unwrap();
        let w = NodalWeights::new(m.h()).unwrap();
        (m, w)
    }

    #[test]
    fn knot_values_zero_and_constant() {
        let (m, w) = setup(0.0, 1.0, 10);
        let kv = knot_values(&CoefficientVector::zeros(&m), &w).unwrap();
        assert_eq!(kv.values.len(), 11);
        assert!(kv.values.iter().chain(&kv.d1).chain(&kv.d2).all(|v| *v == 0.0));

        let c = 2.5;
        let kv = knot_values(&CoefficientVector::constant(&m, c), &w).unwrap();
        for i in 0..=10 {
            assert_relative_eq!(kv.values[i], c * w.partition_sum(), max_relative = 1e-15);
            assert_eq!(kv.d1[i], 0.0);
            let defect = c * (2.0 * w.gamma1 + w.gamma2);
            assert!((kv.d2[i] - defect).abs() <= 1e-12 * c * w.gamma1);
            assert!(kv.d2[i].abs() <= 1e-5 * c * w.gamma1);
        }
    }

    #[test]
    fn knot_values_unit_vector() {
        let (m, w) = setup(0.0, 1.0, 10);
        let j = 4isize;
        let mut d = vec![0.0; 13];
        d[(j + 1) as usize] = 1.0;
        let kv = knot_values(&CoefficientVector::new(&m, d).unwrap(), &w).unwrap();
        for (i, v) in kv.values.iter().enumerate() {
            let expected = match (i as isize - j).abs() {
                0 => w.alpha2,
                1 => w.alpha1,
                _ => 0.0,
            };
            assert_eq!(*v, expected, "node {i}");
        }
    }

    #[test]
    fn knot_values_mesh_mismatch() {
        let (m, _) = setup(0.0, 1.0, 10);
        let other = NodalWeights::new(0.2).unwrap();
        assert_eq!(
            knot_values(&CoefficientVector::zeros(&m), &other),
            Err(Error::MeshMismatch)
        );
    }

    #[test]
    fn coefficient_vector_validation() {
        let (m, _) = setup(0.0, 1.0, 10);
        assert!(matches!(
            CoefficientVector::new(&m, vec![0.0; 12]),
            Err(Error::LengthMismatch { expected: 13, found: 12 })
        ));
        let mut d = vec![0.0; 13];
        d[3] = f64::NAN;
        assert!(CoefficientVector::new(&m, d).is_err());
        let c = CoefficientVector::constant(&m, 1.0);
        assert_eq!(c.get(-1), Some(1.0));
        assert_eq!(c.get(11), Some(1.0));
        assert_eq!(c.get(12), None);
        assert_eq!(c.get(-2), None);
    }

    #[test]
    fn eval_at_knots_and_domain() {
        let (m, w) = setup(-1.0, 2.0, 12);
        let d: Vec<f64> = (0..15).map(|k| libm::sin(k as f64 * 0.7) + 0.3).collect();
        let c = CoefficientVector::new(&m, d).unwrap();
        let kv = knot_values(&c, &w).unwrap();
        for (j, &x) in m.nodes().iter().enumerate() {
            assert!((eval_at(&c, &m, x).unwrap() - kv.values[j]).abs() <= 1e-12);
        }
        assert_eq!(eval_at(&CoefficientVector::zeros(&m), &m, 0.3).unwrap(), 0.0);
        assert!(matches!(
            eval_at(&c, &m, 2.01),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn fit_pulse_centre() {
        let (m, w) = setup(-50.0, 50.0, 20000);
        let p = FisherProblem::new(0.1, 1.0, sech2_pulse, |_| 0.0, |_| 0.0).with_end_slopes(0.0, 0.0);
        let c = fit_initial(&p, &m, &w).unwrap();
        let kv = knot_values(&c, &w).unwrap();
        assert!((kv.values[10000] - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn fit_zero() {
        let (m, w) = setup(0.0, 1.0, 16);
        let p = FisherProblem::new(1.0, 1.0, |_| 0.0, |_| 0.0, |_| 0.0).with_end_slopes(0.0, 0.0);
        let c = fit_initial(&p, &m, &w).unwrap();
        assert!(c.as_slice().iter().all(|d| *d == 0.0));
    }

    #[test]
    fn fit_uses_finite_difference_slopes() {
        let (m, w) = setup(0.0, 1.0, 16);
        let p = FisherProblem::new(1.0, 1.0, libm::sin, libm::sin, libm::sin);
        let c = fit_initial(&p, &m, &w).unwrap();
        let kv = knot_values(&c, &w).unwrap();
        assert!((kv.d1[0] - 1.0).abs() < 1e-9);
        assert!((kv.d1[16] - libm::cos(1.0)).abs() < 1e-9);
    }

    #[test]
    fn one_sided_derivative_is_fourth_order() {
        let e1 = (one_sided_derivative(libm::exp, 0.0, 0.1) - 1.0).abs();
        let e2 = (one_sided_derivative(libm::exp, 0.0, 0.05) - 1.0).abs();
        assert!(e1 / e2 > 14.0 && e1 / e2 < 18.0, "{}", e1 / e2);
        let back = one_sided_derivative(libm::exp, 1.0, -0.01);
        assert!((back - core::f64::consts::E).abs() < 1e-8);
    }

    #[test]
    fn compatibility() {
        let m = UniformMesh::new(0.0, 1.0, 10).unwrap();
        let ok = FisherProblem::new(1.0, 1.0, |x| x, |_| 0.0, |_| 1.0);
        assert!(ok.is_compatible(&m));
        let bad = FisherProblem::new(1.0, 1.0, |x| x, |_| 1.0, |_| 1.0);
        assert!(!bad.is_compatible(&m));
    }
}
