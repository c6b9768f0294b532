//! Error metrics against reference solutions, empirical convergence-order
//! estimation, and the seeded simulation-trace machinery.

mod frames;
mod rng;
mod trace;

pub use frames::{emit_frames, FrameFormat};
pub use rng::Xorshift64Star;
pub use trace::{record_simulation, ColorTag, SimEvent, SimulationTrace};

use std::sync::Arc;

use serde::Serialize;

use crate::catalog::ClosedForm;
use crate::error::{Error, Result};
use crate::integrators::{solve_on_mesh, sequential_solve, OneStepIntegrator, Trajectory};
use crate::mesh::{FineMesh, TimePartition};
use crate::parareal::PararealResult;
use crate::problem::IvpProblem;
use crate::state::StateVector;

/// What a parareal run is measured against.
///
/// The sequential-fine variant sweeps the same fine integrator over the same
/// fine mesh as the run it is compared with, so converged boundary values
/// match it bitwise.
pub enum ReferenceSolution {
    ClosedForm(ClosedForm),
    SequentialFine {
        trajectory: Trajectory,
        n_fine: usize,
    },
}

impl ReferenceSolution {
    pub fn closed_form(evaluator: ClosedForm) -> Self {
        ReferenceSolution::ClosedForm(evaluator)
    }

    /// Sequential fine solve on `mesh`, chained across subdomains.
    pub fn sequential_fine(
        problem: &IvpProblem,
        mesh: &FineMesh,
        fine: &dyn OneStepIntegrator,
    ) -> Result<Self> {
        let trajectory = solve_on_mesh(problem.y0.clone(), mesh, problem.rhs.as_ref(), fine)?;
        Ok(ReferenceSolution::SequentialFine {
            trajectory,
            n_fine: mesh.n_steps(),
        })
    }

    /// Reference value at coarse boundary `n`.
    pub fn at_boundary(&self, n: usize, partition: &TimePartition) -> StateVector {
        match self {
            ReferenceSolution::ClosedForm(f) => f(partition.boundaries()[n]),
            ReferenceSolution::SequentialFine { trajectory, n_fine } => {
                trajectory.values()[n * n_fine].clone()
            }
        }
    }
}

/// Per-iteration error metrics at the coarse boundaries.
///
/// Entry `i` describes correction iteration `k = i + 1`.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    /// Sup over `n` of the sup-norm error at boundary `n`.
    pub per_iteration_boundary_sup: Vec<f64>,
    /// Error at the right endpoint `b` only.
    pub right_endpoint_error: Vec<f64>,
}

/// Sup-norm differences between corrected boundary values and a reference,
/// per iteration, plus the right-endpoint series.
pub fn boundary_errors(
    result: &PararealResult,
    reference: &ReferenceSolution,
) -> Result<ErrorReport> {
    let history = result
        .history
        .as_ref()
        .ok_or(Error::MissingHistory("boundary_errors needs a solve run with keep_history"))?;
    let n_sub = result.partition.n_sub();
    let reference_values: Vec<StateVector> = (0..=n_sub)
        .map(|n| reference.at_boundary(n, &result.partition))
        .collect();

    let mut per_iteration_boundary_sup = Vec::with_capacity(result.iterations_run);
    let mut right_endpoint_error = Vec::with_capacity(result.iterations_run);
    for k in 1..=result.iterations_run {
        let sup = (0..=n_sub)
            .map(|n| history.corrected(n, k).sup_diff(&reference_values[n]))
            .fold(0.0, f64::max);
        per_iteration_boundary_sup.push(sup);
        right_endpoint_error.push(history.corrected(n_sub, k).sup_diff(&reference_values[n_sub]));
    }
    Ok(ErrorReport {
        per_iteration_boundary_sup,
        right_endpoint_error,
    })
}

/// Least-squares slope of `log(global error at b)` against `log(h)` for a
/// problem with known closed form. Needs at least three step sizes; an exact
/// integrator (zero error at some `h`) has no finite order to fit.
pub fn estimate_order(
    integrator: &dyn OneStepIntegrator,
    problem: &IvpProblem,
    closed_form: &ClosedForm,
    step_sizes: &[f64],
) -> Result<f64> {
    if step_sizes.len() < 3 {
        return Err(Error::validation(
            "step_sizes",
            "need at least 3 step sizes to fit a slope",
        ));
    }
    let exact_b = closed_form(problem.b);
    let mut log_h = Vec::with_capacity(step_sizes.len());
    let mut log_e = Vec::with_capacity(step_sizes.len());
    for &h in step_sizes {
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::validation(
                "step_sizes",
                format!("step sizes must be positive and finite, got {h}"),
            ));
        }
        let n = ((problem.b - problem.a) / h).round() as usize;
        let traj = sequential_solve(
            n,
            problem.a,
            problem.b,
            problem.y0.clone(),
            problem.rhs.as_ref(),
            integrator,
        )?;
        let err = traj.final_value().sup_diff(&exact_b);
        if err == 0.0 {
            return Err(Error::OrderIndeterminate { step_size: h });
        }
        log_h.push(h.ln());
        log_e.push(err.ln());
    }
    let n = log_h.len() as f64;
    let mean_x = log_h.iter().sum::<f64>() / n;
    let mean_y = log_e.iter().sum::<f64>() / n;
    let cov: f64 = log_h
        .iter()
        .zip(&log_e)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let var: f64 = log_h.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    Ok(cov / var)
}

/// Convenience wrapper building the closed form from a scalar function.
pub fn scalar_closed_form(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> ClosedForm {
    Arc::new(move |t: f64| StateVector::scalar(f(t)))
}
