//! Compiled-in problem catalog. RHS functions are selected by name; there is
//! no runtime expression parser.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::problem::{IvpProblem, Rhs};
use crate::state::StateVector;

/// Closed-form solution `t -> y(t)`, available for some catalog entries.
pub type ClosedForm = Arc<dyn Fn(f64) -> StateVector + Send + Sync>;

/// A named initial-value problem with optional exact solution.
#[derive(Clone)]
pub struct ProblemSpec {
    pub name: &'static str,
    pub description: &'static str,
    pub a: f64,
    pub b: f64,
    pub y0: Vec<f64>,
    pub rhs: Arc<dyn Rhs>,
    pub closed_form: Option<ClosedForm>,
}

impl ProblemSpec {
    pub fn problem(&self) -> IvpProblem {
        IvpProblem::new(
            self.rhs.clone(),
            self.a,
            self.b,
            StateVector::new(self.y0.clone()),
        )
        .expect("catalog entries are valid problems")
    }
}

/// Name-keyed registry of built-in problems.
#[derive(Clone, Default)]
pub struct ProblemCatalog {
    entries: BTreeMap<String, ProblemSpec>,
}

impl ProblemCatalog {
    /// Catalog with the built-in entries `linear`, `sin_t_exp_t`, `sin_ty`,
    /// and `zero`.
    pub fn builtin() -> Self {
        let mut cat = ProblemCatalog::default();
        cat.insert(ProblemSpec {
            name: "sin_ty",
            description: "y' = sin(t*y) on [-20, 20], y(-20) = 10; slow parareal convergence",
            a: -20.0,
            b: 20.0,
            y0: vec![10.0],
            rhs: Arc::new(|t: f64, y: &StateVector| StateVector::scalar((t * y[0]).sin())),
            closed_form: None,
        });
        cat.insert(ProblemSpec {
            name: "sin_t_exp_t",
            description: "y' = sin(t)*e^t on [-20, 20], y(-20) = 10; converges in one iteration",
            a: -20.0,
            b: 20.0,
            y0: vec![10.0],
            rhs: Arc::new(|t: f64, _y: &StateVector| StateVector::scalar(t.sin() * t.exp())),
            closed_form: None,
        });
        cat.insert(ProblemSpec {
            name: "linear",
            description: "y' = y on [0, 1], y(0) = 1; exact solution e^t",
            a: 0.0,
            b: 1.0,
            y0: vec![1.0],
            rhs: Arc::new(|_t: f64, y: &StateVector| y.clone()),
            closed_form: Some(Arc::new(|t: f64| StateVector::scalar(t.exp()))),
        });
        cat.insert(ProblemSpec {
            name: "zero",
            description: "y' = 0 on [0, 1], y(0) = 1; constant solution",
            a: 0.0,
            b: 1.0,
            y0: vec![1.0],
            rhs: Arc::new(|_t: f64, y: &StateVector| StateVector::new(vec![0.0; y.dim()])),
            closed_form: Some(Arc::new(|_t: f64| StateVector::scalar(1.0))),
        });
        cat
    }

    pub fn insert(&mut self, spec: ProblemSpec) {
        self.entries.insert(spec.name.to_owned(), spec);
    }

    pub fn get(&self, name: &str) -> Result<&ProblemSpec> {
        self.entries.get(name).ok_or_else(|| {
            Error::validation(
                "problem",
                format!(
                    "unknown problem {name:?}; available: {}",
                    self.entries.keys().cloned().collect::<Vec<_>>().join(", ")
                ),
            )
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &ProblemSpec> {
        self.entries.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names() {
        let cat = ProblemCatalog::builtin();
        let names: Vec<&str> = cat.iter().map(|p| p.name).collect();
        assert_eq!(names, vec!["linear", "sin_t_exp_t", "sin_ty", "zero"]);
    }

    #[test]
    fn sin_ty_matches_reference_setup() {
        let cat = ProblemCatalog::builtin();
        let spec = cat.get("sin_ty").unwrap();
        assert_eq!((spec.a, spec.b), (-20.0, 20.0));
        assert_eq!(spec.y0, vec![10.0]);
        let f = spec.rhs.eval(2.0, &StateVector::scalar(3.0));
        assert_eq!(f[0], 6.0_f64.sin());
    }

    #[test]
    fn unknown_problem_is_a_validation_error() {
        let cat = ProblemCatalog::builtin();
        assert!(cat.get("lorenz").is_err());
    }
}
