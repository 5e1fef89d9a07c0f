//! Tridiagonal systems and the Thomas algorithm.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// `sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]`.
///
/// `sub[0]` and `sup[M-1]` are outside the matrix and ignored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn validate(&self) -> Result<()> {
        let m = self.diag.len();
        if m == 0 {
            return Err(Error::LengthMismatch {
                expected: 1,
                found: 0,
            });
        }
        for len in [self.sub.len(), self.sup.len(), self.rhs.len()] {
            if len != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    found: len,
                });
            }
        }
        Ok(())
    }

    /// `A x` for a candidate solution.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let m = self.len();
        (0..m)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.sub[i] * x[i - 1];
                }
                if i + 1 < m {
                    s += self.sup[i] * x[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Solves without pivoting. Fails on the first pivot with magnitude at or
/// below `1e-14 · max|diag|`.
pub fn thomas_solve(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    sys.validate()?;
    let m = sys.len();
    let scale = sys.diag.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
    let tiny = 1e-14 * scale;

    let mut c = vec![0.0; m];
    let mut x = vec![0.0; m];

    let mut pivot = sys.diag[0];
    for i in 0..m {
        if i > 0 {
            pivot = sys.diag[i] - sys.sub[i] * c[i - 1];
        }
        if !(pivot.abs() > tiny) {
            return Err(Error::SingularPivot { row: i, pivot });
        }
        if i + 1 < m {
            c[i] = sys.sup[i] / pivot;
        }
        let carried = if i > 0 { sys.sub[i] * x[i - 1] } else { 0.0 };
        x[i] = (sys.rhs[i] - carried) / pivot;
    }
    for i in (0..m - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("tridiagonal solution"));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        let rhs = vec![1.5, -2.0, 3.25, 0.0];
        let sys = TridiagonalSystem {
            sub: vec![0.0; 4],
            diag: vec![1.0; 4],
            sup: vec![0.0; 4],
            rhs: rhs.clone(),
        };
        assert_eq!(thomas_solve(&sys).unwrap(), rhs);
    }

    #[test]
    fn three_by_three() {
        let sys = TridiagonalSystem {
            sub: vec![0.0, 1.0, 1.0],
            diag: vec![2.0, 2.0, 2.0],
            sup: vec![1.0, 1.0, 0.0],
            rhs: vec![3.0, 4.0, 3.0],
        };
        let x = thomas_solve(&sys).unwrap();
        for v in x {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn single_row() {
        let sys = TridiagonalSystem {
            sub: vec![0.0],
            diag: vec![4.0],
            sup: vec![0.0],
            rhs: vec![2.0],
        };
        assert_eq!(thomas_solve(&sys).unwrap(), vec![0.5]);
    }

    #[test]
    fn zero_pivot_reports_row() {
        // second pivot: 1 - 1*1/1 = 0
        let sys = TridiagonalSystem {
            sub: vec![0.0, 1.0, 1.0],
            diag: vec![1.0, 1.0, 3.0],
            sup: vec![1.0, 1.0, 0.0],
            rhs: vec![1.0, 1.0, 1.0],
        };
        assert!(matches!(
            thomas_solve(&sys),
            Err(Error::SingularPivot { row: 1, .. })
        ));
    }

    #[test]
    fn length_mismatch() {
        let sys = TridiagonalSystem {
            sub: vec![0.0; 3],
            diag: vec![1.0; 3],
            sup: vec![0.0; 2],
            rhs: vec![1.0; 3],
        };
        assert!(matches!(thomas_solve(&sys), Err(Error::LengthMismatch { .. })));
        assert!(thomas_solve(&TridiagonalSystem::default()).is_err());
    }
}
