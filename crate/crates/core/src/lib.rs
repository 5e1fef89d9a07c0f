//! Trigonometric cubic B-spline (TCB) collocation for Fisher's equation
//!
//! ```text
//! u_t = λ u_xx + β u (1 − u)
//! ```
//!
//! Space is discretized by collocating a TCB expansion at the knots of a
//! uniform mesh; time is advanced by Crank–Nicolson with the reaction term
//! linearized about the previous level, so every step is one tridiagonal
//! solve.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, presets and
//! the command-line front end live in `tcb-fisher-cli`.
//!
//! ```
//! use tcb_fisher::{analysis, FisherProblem, NodalWeights, SolverConfig, UniformMesh};
//!
//! let mesh = UniformMesh::new(-10.0, 10.0, 64).unwrap();
//! let weights = NodalWeights::new(mesh.h()).unwrap();
//! let beta = 1.0;
//! let problem = FisherProblem::new(
//!     1.0,
//!     beta,
//!     move |x| analysis::exact_wave(x, 0.0, beta),
//!     move |t| analysis::exact_wave(-10.0, t, beta),
//!     move |t| analysis::exact_wave(10.0, t, beta),
//! );
//! let config = SolverConfig::new(1e-3, 0.1, vec![0.1]).unwrap();
//! let snapshots = tcb_fisher::run(&problem, &mesh, &weights, &config).unwrap();
//! assert_eq!(snapshots.len(), 1);
//! ```

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod basis;
mod error;
pub mod field;
pub mod stepper;
pub mod tridiag;

pub use basis::{eval_piecewise, eval_recursive, NodalWeights, UniformMesh};
pub use error::{Error, Result};
pub use field::{eval_at, fit_initial, knot_values, CoefficientVector, FisherProblem, KnotValues};
pub use stepper::{
    assemble_step, linearized_reaction, run, step, Linearization, Snapshot, SolverConfig,
    StepCoefficients,
};
pub use tridiag::{thomas_solve, TridiagonalSystem};
