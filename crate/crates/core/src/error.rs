use alloc::boxed::Box;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degenerate interval [{a}, {b}]: need b > a")]
    DegenerateInterval { a: f64, b: f64 },
    #[error("need at least 3 subintervals, got {0}")]
    TooFewIntervals(usize),
    #[error("mesh spacing h = {0} outside (0, 2π/3)")]
    SpacingOutOfRange(f64),
    #[error("basis index {index} outside -1..={max}")]
    BasisIndexOutOfRange { index: isize, max: isize },
    #[error("spline order {0} not supported (1..=4)")]
    InvalidOrder(usize),
    #[error("knot index {0} outside the extended knot list")]
    KnotIndexOutOfRange(isize),
    #[error("coefficients and weights/mesh were built on different meshes")]
    MeshMismatch,
    #[error("x = {x} outside the domain [{a}, {b}]")]
    OutsideDomain { x: f64, a: f64, b: f64 },
    #[error("expected length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("pivot {pivot:e} too small at row {row}")]
    SingularPivot { row: usize, pivot: f64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("step to time level {level} (t = {t}) failed: {source}")]
    StepFailed {
        level: usize,
        t: f64,
        source: Box<Error>,
    },
}
