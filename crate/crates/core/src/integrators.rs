//! One-step integration methods and the sequential whole-interval solver.
//!
//! Both methods fix the evaluation order of every floating-point operation:
//! serial and parallel sweeps must produce bitwise-identical states, so no
//! reassociation is permitted anywhere on the numeric path.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mesh::FineMesh;
use crate::problem::Rhs;
use crate::state::StateVector;

/// A single-step map `(delta, t, y, f) -> y_next`.
///
/// Implementations must be pure, deterministic, and dimension-preserving.
pub trait OneStepIntegrator: Send + Sync {
    fn name(&self) -> &str;

    fn description(&self) -> &str {
        ""
    }

    fn step(&self, delta: f64, t: f64, y: &StateVector, rhs: &dyn Rhs) -> StateVector;
}

/// Forward Euler: `y + delta * f(t, y)`. Exactly one rhs evaluation.
pub fn euler_step(delta: f64, t: f64, y: &StateVector, rhs: &dyn Rhs) -> StateVector {
    y.axpy(delta, &rhs.eval(t, y))
}

/// Classical fourth-order Runge-Kutta.
///
/// Stage order and the association of the weighted sum are fixed:
/// `k1`, then `2*k2`, then `2*k3`, then `k4`, summed left to right and
/// scaled by `delta / 6`.
pub fn rk4_step(delta: f64, t: f64, y: &StateVector, rhs: &dyn Rhs) -> StateVector {
    let half = delta / 2.0;
    let k1 = rhs.eval(t, y);
    let k2 = rhs.eval(t + half, &y.axpy(half, &k1));
    let k3 = rhs.eval(t + half, &y.axpy(half, &k2));
    let k4 = rhs.eval(t + delta, &y.axpy(delta, &k3));
    let scale = delta / 6.0;
    let components = (0..y.dim())
        .map(|i| y[i] + scale * (((k1[i] + 2.0 * k2[i]) + 2.0 * k3[i]) + k4[i]))
        .collect();
    StateVector::new(components)
}

/// Forward Euler as a named integrator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Euler;

impl OneStepIntegrator for Euler {
    fn name(&self) -> &str {
        "euler"
    }

    fn description(&self) -> &str {
        "forward Euler, first order"
    }

    fn step(&self, delta: f64, t: f64, y: &StateVector, rhs: &dyn Rhs) -> StateVector {
        euler_step(delta, t, y, rhs)
    }
}

/// Classical RK4 as a named integrator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rk4;

impl OneStepIntegrator for Rk4 {
    fn name(&self) -> &str {
        "rk4"
    }

    fn description(&self) -> &str {
        "classical Runge-Kutta, fourth order"
    }

    fn step(&self, delta: f64, t: f64, y: &StateVector, rhs: &dyn Rhs) -> StateVector {
        rk4_step(delta, t, y, rhs)
    }
}

/// Named integrator registry backing CLI selection by string.
///
/// Embedding programs may register additional one-step maps; names are
/// unique and listed in sorted order.
#[derive(Clone, Default)]
pub struct IntegratorRegistry {
    entries: BTreeMap<String, Arc<dyn OneStepIntegrator>>,
}

impl IntegratorRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Registry with the built-in `euler` and `rk4` methods.
    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register(Arc::new(Euler));
        reg.register(Arc::new(Rk4));
        reg
    }

    pub fn register(&mut self, integrator: Arc<dyn OneStepIntegrator>) {
        self.entries
            .insert(integrator.name().to_owned(), integrator);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn OneStepIntegrator>> {
        self.entries.get(name).cloned().ok_or_else(|| {
            Error::validation(
                "integrator",
                format!(
                    "unknown integrator {name:?}; available: {}",
                    self.entries
                        .keys()
                        .cloned()
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            )
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn OneStepIntegrator>> {
        self.entries.values()
    }
}

/// Discrete solution samples: strictly increasing times with one state each.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    values: Vec<StateVector>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, values: Vec<StateVector>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::validation(
                "trajectory",
                format!(
                    "times ({}) and values ({}) must have equal length",
                    times.len(),
                    values.len()
                ),
            ));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::validation(
                "trajectory",
                "times must be strictly increasing",
            ));
        }
        Ok(Trajectory { times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[StateVector] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_value(&self) -> &StateVector {
        self.values.last().expect("trajectory is non-empty")
    }
}

/// Single left-to-right pass of `integrator` over a uniform grid of
/// `n_steps + 1` points on `[a, b]`. No correction, no parallelism; this is
/// the reference the parareal iteration converges to.
pub fn sequential_solve(
    n_steps: usize,
    a: f64,
    b: f64,
    y0: StateVector,
    rhs: &dyn Rhs,
    integrator: &dyn OneStepIntegrator,
) -> Result<Trajectory> {
    if n_steps == 0 {
        return Err(Error::validation("n_steps", "must be at least 1"));
    }
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::validation(
            "interval",
            format!("need finite a < b, got [{a}, {b}]"),
        ));
    }
    let h = (b - a) / n_steps as f64;
    let mut times: Vec<f64> = (0..=n_steps).map(|i| a + i as f64 * h).collect();
    times[n_steps] = b;
    let mut values = Vec::with_capacity(n_steps + 1);
    values.push(y0);
    for i in 0..n_steps {
        let next = integrator.step(h, times[i], &values[i], rhs);
        values.push(next);
    }
    Trajectory::new(times, values)
}

/// Chained fine sweep over a `FineMesh`: subdomains are integrated left to
/// right, each starting from the previous subdomain's final value, on the
/// exact mesh times and fine step the parareal engine uses. The result is the
/// sequential fine solution on that mesh (`N * M + 1` points).
pub fn solve_on_mesh(
    y0: StateVector,
    mesh: &FineMesh,
    rhs: &dyn Rhs,
    integrator: &dyn OneStepIntegrator,
) -> Result<Trajectory> {
    let delta = mesh.delta_fine();
    let mut values = Vec::with_capacity(mesh.n_sub() * mesh.n_steps() + 1);
    values.push(y0);
    for n in 0..mesh.n_sub() {
        for &t in &mesh.subdomain(n)[..mesh.n_steps()] {
            let next = integrator.step(delta, t, values.last().unwrap(), rhs);
            values.push(next);
        }
    }
    Trajectory::new(mesh.concatenated_times(), values)
}
