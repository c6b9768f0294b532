//! The parareal engine: initial coarse sweep, parallel fine propagation,
//! sequential predictor-corrector sweep, iteration control.
//!
//! Iteration indexing: column `k = 0` is the initial coarse sweep; correction
//! iterations are `k = 1..=K`. The fine stage of iteration `k` starts each
//! subdomain from the previous iteration's corrected boundary value; the
//! predictor of the correction sweep uses the current iteration's corrected
//! value (Gauss-Seidel style).

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::integrators::{OneStepIntegrator, Trajectory};
use crate::mesh::{make_fine_mesh, make_partition, FineMesh, TimePartition};
use crate::problem::{IvpProblem, Rhs};
use crate::state::StateVector;

/// Solve parameters. `stop_tolerance: None` runs exactly `max_iterations`
/// corrections, matching the fixed-iteration reference behavior.
#[derive(Clone, Debug)]
pub struct PararealConfig {
    /// Number of coarse subintervals `N` (one unit of parallel work each).
    pub n_coarse: usize,
    /// Fine steps per subdomain `M`.
    pub n_fine: usize,
    /// Number of correction iterations `K`.
    pub max_iterations: usize,
    /// Early-stop threshold on the sup-norm iteration increment.
    pub stop_tolerance: Option<f64>,
    /// Run the fine stage across a thread pool instead of a serial loop.
    /// Numeric output is bitwise-identical either way.
    pub parallel: bool,
    /// Retain all per-iteration fine trajectories (O(N * M * K) memory).
    pub keep_history: bool,
}

impl PararealConfig {
    pub fn new(n_coarse: usize, n_fine: usize, max_iterations: usize) -> Self {
        PararealConfig {
            n_coarse,
            n_fine,
            max_iterations,
            stop_tolerance: None,
            parallel: true,
            keep_history: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_coarse == 0 {
            return Err(Error::validation("n_coarse", "must be at least 1"));
        }
        if self.n_fine == 0 {
            return Err(Error::validation("n_fine", "must be at least 1"));
        }
        if self.max_iterations == 0 {
            return Err(Error::validation("iterations", "must be at least 1"));
        }
        if let Some(tol) = self.stop_tolerance {
            if !tol.is_finite() || tol < 0.0 {
                return Err(Error::validation(
                    "tolerance",
                    format!("must be finite and non-negative, got {tol}"),
                ));
            }
        }
        Ok(())
    }
}

/// Full record of a solve: coarse predictions `w`, corrected boundary values
/// `y_corr`, and per-iteration fine trajectories `z`.
///
/// Columns are iteration-major: `w(n, k)` reads column `k` at boundary `n`.
/// Column 0 of `w` and `y_corr` is the initial coarse sweep. When the solve
/// runs without `keep_history`, only the final iteration's fine trajectories
/// are retained and earlier `z` columns are empty.
#[derive(Clone, Debug)]
pub struct IterationHistory {
    n_sub: usize,
    n_fine: usize,
    w: Vec<Vec<StateVector>>,
    y_corr: Vec<Vec<StateVector>>,
    z: Vec<Vec<Vec<StateVector>>>,
}

impl IterationHistory {
    fn with_initial_sweep(n_sub: usize, n_fine: usize, initial: Vec<StateVector>) -> Self {
        debug_assert_eq!(initial.len(), n_sub + 1);
        IterationHistory {
            n_sub,
            n_fine,
            w: vec![initial.clone()],
            y_corr: vec![initial],
            z: Vec::new(),
        }
    }

    /// Correction iterations recorded so far.
    pub fn iterations(&self) -> usize {
        self.w.len() - 1
    }

    /// Coarse prediction `w[n][k]`; `k = 0` is the initial sweep.
    pub fn prediction(&self, n: usize, k: usize) -> &StateVector {
        &self.w[k][n]
    }

    /// Corrected boundary value `y_corr[n][k]`; `k = 0` is the initial sweep.
    pub fn corrected(&self, n: usize, k: usize) -> &StateVector {
        &self.y_corr[k][n]
    }

    /// Column `k` of corrected boundary values, all `n_sub + 1` boundaries.
    pub fn corrected_column(&self, k: usize) -> &[StateVector] {
        &self.y_corr[k]
    }

    /// Fine trajectory of subdomain `n` in correction iteration `k >= 1`
    /// (`n_fine + 1` states). Empty for iterations dropped by a solve
    /// without `keep_history`.
    pub fn fine_trajectory(&self, n: usize, k: usize) -> &[StateVector] {
        &self.z[k - 1][n]
    }

    /// Fine endpoint `z[n][M][k]` used in the `k`-th correction.
    pub fn fine_endpoint(&self, n: usize, k: usize) -> &StateVector {
        &self.z[k - 1][n][self.n_fine]
    }

    pub fn n_sub(&self) -> usize {
        self.n_sub
    }

    pub fn n_fine(&self) -> usize {
        self.n_fine
    }
}

/// Outcome of [`solve_parareal`].
#[derive(Clone, Debug)]
pub struct PararealResult {
    /// Concatenated fine solution from the last completed iteration, with
    /// duplicate boundary points dropped (the fine endpoint of each subdomain
    /// is kept at interior boundaries).
    pub trajectory: Trajectory,
    /// Present when the solve ran with `keep_history`.
    pub history: Option<IterationHistory>,
    /// Correction iterations actually performed.
    pub iterations_run: usize,
    /// Per-iteration sup-norm of `y_corr[.][k] - y_corr[.][k-1]`.
    pub increments: Vec<f64>,
    /// Per-iteration fine-stage durations in seconds.
    pub wall_times_s: Vec<f64>,
    pub partition: TimePartition,
    pub mesh: FineMesh,
}

/// Sequential coarse sweep seeding iteration 0:
/// `out[0] = y0`, `out[n+1] = coarse.step(delta, t_n, out[n], rhs)`.
pub fn initial_coarse_sweep(
    problem: &IvpProblem,
    partition: &TimePartition,
    coarse: &dyn OneStepIntegrator,
) -> Result<Vec<StateVector>> {
    let delta = partition.delta_coarse();
    let bounds = partition.boundaries();
    let mut out = Vec::with_capacity(partition.n_sub() + 1);
    out.push(problem.y0.clone());
    for n in 0..partition.n_sub() {
        let next = coarse.step(delta, bounds[n], &out[n], problem.rhs.as_ref());
        if !next.is_finite() {
            return Err(Error::NonFinite {
                stage: "coarse",
                iteration: 0,
                subdomain: n,
                step: 0,
            });
        }
        out.push(next);
    }
    Ok(out)
}

/// Fine propagation of one subdomain: `M` steps of `fine` from `y_start`
/// along the subdomain's mesh points. Independent of every other subdomain.
pub fn fine_propagate_subdomain(
    subdomain_index: usize,
    y_start: &StateVector,
    mesh: &FineMesh,
    fine: &dyn OneStepIntegrator,
    rhs: &dyn Rhs,
) -> Result<Vec<StateVector>> {
    let delta = mesh.delta_fine();
    let points = mesh.subdomain(subdomain_index);
    let mut out = Vec::with_capacity(mesh.n_steps() + 1);
    out.push(y_start.clone());
    for m in 0..mesh.n_steps() {
        let next = fine.step(delta, points[m], &out[m], rhs);
        if !next.is_finite() {
            return Err(Error::NonFinite {
                stage: "fine",
                iteration: 0,
                subdomain: subdomain_index,
                step: m + 1,
            });
        }
        out.push(next);
    }
    Ok(out)
}

/// Sequential predictor-corrector pass appending columns `w[.][k]` and
/// `y_corr[.][k]` to the history. Requires the fine endpoints for iteration
/// `k` to be present already.
///
/// For `n = 0..N-1`:
/// `w[n+1][k]   = coarse.step(delta, t_n, y_corr[n][k], rhs)`
/// `y_corr[n+1][k] = w[n+1][k] - w[n+1][k-1] + z[n][M][k]`
/// with `y_corr[0][k] = y0`. The predictor reads the current iteration's
/// corrected value, not the previous iteration's.
pub fn correction_sweep(
    k: usize,
    partition: &TimePartition,
    coarse: &dyn OneStepIntegrator,
    rhs: &dyn Rhs,
    history: &mut IterationHistory,
) -> Result<()> {
    debug_assert_eq!(history.w.len(), k);
    debug_assert_eq!(history.z.len(), k);
    let delta = partition.delta_coarse();
    let bounds = partition.boundaries();
    let n_sub = partition.n_sub();
    let m = history.n_fine;
    let y0 = history.y_corr[0][0].clone();

    let mut w_col = Vec::with_capacity(n_sub + 1);
    let mut y_col = Vec::with_capacity(n_sub + 1);
    w_col.push(y0.clone());
    y_col.push(y0);
    for n in 0..n_sub {
        let w_next = coarse.step(delta, bounds[n], &y_col[n], rhs);
        if !w_next.is_finite() {
            return Err(Error::NonFinite {
                stage: "correction",
                iteration: k,
                subdomain: n,
                step: 0,
            });
        }
        let w_prev = &history.w[k - 1][n + 1];
        let z_end = &history.z[k - 1][n][m];
        let components = (0..w_next.dim())
            .map(|i| (w_next[i] - w_prev[i]) + z_end[i])
            .collect();
        let y_next = StateVector::new(components);
        if !y_next.is_finite() {
            return Err(Error::NonFinite {
                stage: "correction",
                iteration: k,
                subdomain: n,
                step: 0,
            });
        }
        w_col.push(w_next);
        y_col.push(y_next);
    }
    history.w.push(w_col);
    history.y_corr.push(y_col);
    Ok(())
}

fn sup_increment(a: &[StateVector], b: &[StateVector]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.sup_diff(y))
        .fold(0.0, f64::max)
}

/// Run the parareal iteration: initial coarse sweep, then for each
/// `k = 1..=K` a fork-join fine stage over all subdomains followed by the
/// sequential correction sweep. Stops early when `stop_tolerance` is set and
/// the sup-norm increment falls at or below it.
///
/// Output is bitwise-identical regardless of `config.parallel`: each fine
/// task owns its own subdomain slice and results are merged by subdomain
/// index, never by completion order.
pub fn solve_parareal(
    problem: &IvpProblem,
    config: &PararealConfig,
    coarse: &dyn OneStepIntegrator,
    fine: &dyn OneStepIntegrator,
) -> Result<PararealResult> {
    config.validate()?;
    let partition = make_partition(problem.a, problem.b, config.n_coarse)?;
    let mesh = make_fine_mesh(&partition, config.n_fine)?;
    let n_sub = config.n_coarse;

    let initial = initial_coarse_sweep(problem, &partition, coarse)?;
    let mut history = IterationHistory::with_initial_sweep(n_sub, config.n_fine, initial);

    let mut increments = Vec::with_capacity(config.max_iterations);
    let mut wall_times_s = Vec::with_capacity(config.max_iterations);
    let mut iterations_run = 0;

    let rhs = problem.rhs.as_ref();
    for k in 1..=config.max_iterations {
        let starts = &history.y_corr[k - 1][..n_sub];

        let fine_start = Instant::now();
        let sweeps: Vec<Result<Vec<StateVector>>> = if config.parallel {
            starts
                .par_iter()
                .enumerate()
                .map(|(n, y)| fine_propagate_subdomain(n, y, &mesh, fine, rhs))
                .collect()
        } else {
            starts
                .iter()
                .enumerate()
                .map(|(n, y)| fine_propagate_subdomain(n, y, &mesh, fine, rhs))
                .collect()
        };
        wall_times_s.push(fine_start.elapsed().as_secs_f64());

        let mut z_col = Vec::with_capacity(n_sub);
        for sweep in sweeps {
            z_col.push(sweep.map_err(|e| e.with_iteration(k))?);
        }
        history.z.push(z_col);

        correction_sweep(k, &partition, coarse, rhs, &mut history)?;

        let increment = sup_increment(&history.y_corr[k], &history.y_corr[k - 1]);
        increments.push(increment);
        iterations_run = k;

        if !config.keep_history && k >= 2 {
            history.z[k - 2] = Vec::new();
        }

        if let Some(tol) = config.stop_tolerance {
            if increment <= tol {
                break;
            }
        }
    }

    let trajectory = concatenate_fine(&mesh, &history.z[iterations_run - 1])?;
    let history = config.keep_history.then_some(history);

    Ok(PararealResult {
        trajectory,
        history,
        iterations_run,
        increments,
        wall_times_s,
        partition,
        mesh,
    })
}

fn concatenate_fine(mesh: &FineMesh, z_col: &[Vec<StateVector>]) -> Result<Trajectory> {
    let mut values = Vec::with_capacity(mesh.n_sub() * mesh.n_steps() + 1);
    values.push(z_col[0][0].clone());
    for sub in z_col {
        values.extend(sub[1..].iter().cloned());
    }
    Trajectory::new(mesh.concatenated_times(), values)
}
