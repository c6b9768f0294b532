//! Benchmark-only package; see `benches/solver.rs`.

use std::sync::Arc;

use parareal::{IvpProblem, StateVector};

/// The slow-convergence benchmark problem: `y' = sin(t y)` on `[-20, 20]`
/// with `y(-20) = 10`.
pub fn sin_ty() -> IvpProblem {
    IvpProblem::new(
        Arc::new(|t: f64, y: &StateVector| StateVector::scalar((t * y[0]).sin())),
        -20.0,
        20.0,
        StateVector::scalar(10.0),
    )
    .expect("valid benchmark problem")
}
