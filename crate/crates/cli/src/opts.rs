//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{FrameFormatOpt, Overrides};

#[derive(Parser, Debug)]
#[command(
    name = "parareal",
    version,
    about = "Parallel-in-time ODE solver (parareal algorithm)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a catalog problem and write the solution CSV plus a run report.
    Solve(SolveArgs),
    /// Replay a solve as a deterministic, seeded frame sequence.
    Simulate(SimulateArgs),
    /// Measure fine-stage speedup with an injected per-step delay.
    Bench(BenchArgs),
    /// List the built-in problems and integrators.
    Catalog(CatalogArgs),
}

/// Flags shared by the computing subcommands. All are optional; unset flags
/// fall through to the config file and then to built-in defaults.
#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// Catalog problem name.
    #[arg(long)]
    pub problem: Option<String>,

    /// Coarse integrator name.
    #[arg(long)]
    pub coarse: Option<String>,

    /// Fine integrator name.
    #[arg(long)]
    pub fine: Option<String>,

    /// Number of coarse subintervals N.
    #[arg(short = 'N', long = "n-coarse")]
    pub n_coarse: Option<usize>,

    /// Fine steps per subinterval M.
    #[arg(short = 'M', long = "n-fine")]
    pub n_fine: Option<usize>,

    /// Correction iterations K.
    #[arg(short = 'K', long = "iterations")]
    pub iterations: Option<usize>,

    /// Stop early once the iteration increment drops below this value.
    #[arg(long)]
    pub tolerance: Option<f64>,

    /// Run the fine stage in parallel (default).
    #[arg(long, conflicts_with = "no_parallel")]
    pub parallel: bool,

    /// Run the fine stage serially.
    #[arg(long)]
    pub no_parallel: bool,

    /// Seed for the simulation replay.
    #[arg(long)]
    pub seed: Option<u64>,

    /// JSON config file; flags override its values.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

impl CommonArgs {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            problem: self.problem.clone(),
            coarse: self.coarse.clone(),
            fine: self.fine.clone(),
            n_coarse: self.n_coarse,
            n_fine: self.n_fine,
            iterations: self.iterations,
            tolerance: self.tolerance,
            parallel: if self.no_parallel {
                Some(false)
            } else if self.parallel {
                Some(true)
            } else {
                None
            },
            seed: self.seed,
            ..Default::default()
        }
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Solution CSV path; the run report goes next to it as
    /// <stem>.report.json.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Print the run report as one JSON line instead of a summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Directory receiving the frame files and frames.json index.
    #[arg(long = "out-dir")]
    pub out_dir: Option<PathBuf>,

    /// Frame file format.
    #[arg(long, value_enum)]
    pub format: Option<FrameFormatOpt>,

    /// Largest number of fine steps revealed per frame (default M).
    #[arg(long)]
    pub max_chunk: Option<usize>,

    /// Also draw the previous iteration's coarse guesses.
    #[arg(long)]
    pub show_prev: bool,

    /// Print the frame count as one JSON line instead of a summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Artificial delay per fine step, in milliseconds.
    #[arg(long, default_value_t = 0.0)]
    pub delay_ms: f64,

    /// Timed repetitions; the report quotes medians.
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,

    /// Threads in the dedicated benchmark pool (default N).
    #[arg(long)]
    pub workers: Option<usize>,

    /// Print the bench report as one JSON line instead of a summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    /// Print the registry dump as one JSON line instead of a listing.
    #[arg(long)]
    pub json: bool,
}
