//! Parallel-in-time integration of first-order initial-value problems with
//! the parareal algorithm.
//!
//! A cheap coarse integrator sweeps the whole interval sequentially to seed
//! boundary values; an expensive fine integrator then refines every coarse
//! subinterval concurrently, and a sequential predictor-corrector sweep folds
//! the fine endpoints back into the boundary values. After `k` iterations the
//! first `k` corrected boundary values coincide bitwise with the sequential
//! fine solution, so the method converges within `N` iterations.
//!
//! The crate provides:
//! - [`solve_parareal`] and its building blocks ([`initial_coarse_sweep`],
//!   [`fine_propagate_subdomain`], [`correction_sweep`]);
//! - one-step integrators ([`Euler`], [`Rk4`]) behind the
//!   [`OneStepIntegrator`] trait and a string-keyed [`IntegratorRegistry`];
//! - convergence diagnostics ([`diagnostics::boundary_errors`],
//!   [`diagnostics::estimate_order`]) and a seeded, file-based simulation
//!   replay ([`diagnostics::record_simulation`],
//!   [`diagnostics::emit_frames`]);
//! - a compiled-in problem catalog ([`ProblemCatalog`]).
//!
//! Everything numeric is deterministic: serial and parallel solves produce
//! bitwise-identical results, and identical seeds produce byte-identical
//! simulation frames.

pub mod catalog;
pub mod diagnostics;
mod error;
pub mod integrators;
pub mod io;
pub mod mesh;
pub mod parareal;
pub mod problem;
pub mod state;

pub use catalog::{ProblemCatalog, ProblemSpec};
pub use error::{Error, Result};
pub use integrators::{
    euler_step, rk4_step, sequential_solve, solve_on_mesh, Euler, IntegratorRegistry,
    OneStepIntegrator, Rk4, Trajectory,
};
pub use mesh::{make_fine_mesh, make_partition, FineMesh, TimePartition};
pub use parareal::{
    correction_sweep, fine_propagate_subdomain, initial_coarse_sweep, solve_parareal,
    IterationHistory, PararealConfig, PararealResult,
};
pub use problem::{IvpProblem, Rhs};
pub use state::StateVector;
