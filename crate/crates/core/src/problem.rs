use std::sync::Arc;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// The right-hand side `f(t, y)` of a first-order ODE `y'(t) = f(t, y(t))`.
///
/// Implementations must be pure: identical `(t, y)` inputs must yield
/// bitwise-identical outputs, and the output dimension must equal the input
/// dimension. Impure implementations void every determinism guarantee the
/// solver makes.
pub trait Rhs: Send + Sync {
    fn eval(&self, t: f64, y: &StateVector) -> StateVector;
}

impl<F> Rhs for F
where
    F: Fn(f64, &StateVector) -> StateVector + Send + Sync,
{
    fn eval(&self, t: f64, y: &StateVector) -> StateVector {
        self(t, y)
    }
}

/// A first-order initial-value problem on `[a, b]` with `y(a) = y0`.
#[derive(Clone)]
pub struct IvpProblem {
    pub rhs: Arc<dyn Rhs>,
    pub a: f64,
    pub b: f64,
    pub y0: StateVector,
}

impl IvpProblem {
    pub fn new(rhs: Arc<dyn Rhs>, a: f64, b: f64, y0: StateVector) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::validation(
                "interval",
                format!("endpoints must be finite, got [{a}, {b}]"),
            ));
        }
        if a >= b {
            return Err(Error::validation(
                "interval",
                format!("left endpoint must be below right endpoint, got [{a}, {b}]"),
            ));
        }
        if !y0.is_finite() {
            return Err(Error::validation("y0", "initial state must be finite"));
        }
        Ok(IvpProblem { rhs, a, b, y0 })
    }

    pub fn dim(&self) -> usize {
        self.y0.dim()
    }
}
