//! Deterministic replay of a completed solve as an event stream.
//!
//! The live plotting loop of the original simulator picks random subdomains
//! and advances them by random amounts to mimic parallel progress. Here the
//! randomness comes from an explicitly seeded generator, so the trace is a
//! pure function of the solve inputs and the seed.

use crate::diagnostics::rng::Xorshift64Star;
use crate::error::{Error, Result};
use crate::integrators::{solve_on_mesh, OneStepIntegrator, Trajectory};
use crate::mesh::{FineMesh, TimePartition};
use crate::parareal::{solve_parareal, PararealConfig};
use crate::problem::IvpProblem;
use crate::state::StateVector;

/// Display semantics of a drawn element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorTag {
    /// Current iteration's coarse guesses.
    Green,
    /// Previous iteration's coarse guesses.
    Red,
    /// Fine-integration segments.
    Black,
    /// The connected current-iterate curve.
    Orange,
}

impl ColorTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ColorTag::Green => "green",
            ColorTag::Red => "red",
            ColorTag::Black => "black",
            ColorTag::Orange => "orange",
        }
    }
}

/// One drawing step of the simulation.
#[derive(Clone, Debug)]
pub enum SimEvent {
    /// A coarse prediction at boundary `subdomain` (0..=N), green for the
    /// current iteration, red for the previous one.
    CoarseGuess {
        iteration: usize,
        subdomain: usize,
        value: StateVector,
        color: ColorTag,
    },
    /// Fine steps `from_step..=to_step` of one subdomain becoming visible.
    /// `values` holds the `to_step - from_step + 1` states at those mesh
    /// points.
    FineChunk {
        iteration: usize,
        subdomain: usize,
        from_step: usize,
        to_step: usize,
        values: Vec<StateVector>,
    },
    /// All subdomains of `iteration` are finished; the iterate is connected
    /// into one curve.
    IterationConnected { iteration: usize },
}

/// A recorded simulation: solve geometry, the ideal (sequential fine)
/// solution, and the ordered event stream.
pub struct SimulationTrace {
    pub seed: u64,
    pub max_chunk: usize,
    pub show_prev: bool,
    pub iterations: usize,
    pub partition: TimePartition,
    pub mesh: FineMesh,
    /// Sequential fine solution over the whole interval, drawn in every frame.
    pub ideal: Trajectory,
    pub events: Vec<SimEvent>,
}

/// Solve, then replay the history as a pseudo-random interleaving.
///
/// Per iteration: green coarse guesses first, then (when `show_prev` and
/// `k >= 2`) the previous iteration's guesses in red, then fine chunks until
/// every subdomain has advanced through all `M` steps, then a connect event.
/// Chunk sizes follow `1 + (draw mod max_chunk)`, clamped so a subdomain
/// never advances past `M`.
pub fn record_simulation(
    problem: &IvpProblem,
    config: &PararealConfig,
    coarse: &dyn OneStepIntegrator,
    fine: &dyn OneStepIntegrator,
    seed: u64,
    max_chunk: usize,
    show_prev: bool,
) -> Result<SimulationTrace> {
    if max_chunk == 0 {
        return Err(Error::validation("max_chunk", "must be at least 1"));
    }
    let mut cfg = config.clone();
    cfg.keep_history = true;
    let result = solve_parareal(problem, &cfg, coarse, fine)?;
    let history = result.history.as_ref().expect("keep_history was set");
    let ideal = solve_on_mesh(problem.y0.clone(), &result.mesh, problem.rhs.as_ref(), fine)?;

    let n_sub = result.partition.n_sub();
    let m_steps = result.mesh.n_steps();
    let mut rng = Xorshift64Star::new(seed);
    let mut events = Vec::new();

    for k in 1..=result.iterations_run {
        for n in 0..=n_sub {
            events.push(SimEvent::CoarseGuess {
                iteration: k,
                subdomain: n,
                value: history.prediction(n, k - 1).clone(),
                color: ColorTag::Green,
            });
        }
        if show_prev && k >= 2 {
            for n in 0..=n_sub {
                events.push(SimEvent::CoarseGuess {
                    iteration: k,
                    subdomain: n,
                    value: history.prediction(n, k - 2).clone(),
                    color: ColorTag::Red,
                });
            }
        }

        let mut done = vec![0usize; n_sub];
        while done.iter().any(|&d| d < m_steps) {
            let unfinished: Vec<usize> = (0..n_sub).filter(|&n| done[n] < m_steps).collect();
            let n = unfinished[rng.next_below(unfinished.len())];
            let mut chunk = 1 + rng.next_below(max_chunk);
            if done[n] + chunk > m_steps {
                chunk = m_steps - done[n];
            }
            let from_step = done[n];
            let to_step = from_step + chunk;
            events.push(SimEvent::FineChunk {
                iteration: k,
                subdomain: n,
                from_step,
                to_step,
                values: history.fine_trajectory(n, k)[from_step..=to_step].to_vec(),
            });
            done[n] = to_step;
        }

        events.push(SimEvent::IterationConnected { iteration: k });
    }

    Ok(SimulationTrace {
        seed,
        max_chunk,
        show_prev,
        iterations: result.iterations_run,
        partition: result.partition,
        mesh: result.mesh,
        ideal,
        events,
    })
}
