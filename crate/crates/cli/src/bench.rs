//! The `bench` command: measures the fine-stage speedup of the parallel
//! schedule over the serial one with an artificial per-step cost injected
//! into the fine integrator.

use std::sync::Arc;
use std::time::Duration;

use serde::Serialize;

use parareal::{solve_parareal, Error, OneStepIntegrator, PararealResult, Result, Rhs, StateVector};

use crate::commands::resolve_run;
use crate::config::RunConfig;

/// Wraps an integrator and sleeps before every step. The numeric map is
/// unchanged, so delayed and undelayed runs agree bitwise.
pub struct DelayedIntegrator {
    inner: Arc<dyn OneStepIntegrator>,
    delay: Duration,
}

impl DelayedIntegrator {
    pub fn new(inner: Arc<dyn OneStepIntegrator>, delay: Duration) -> Self {
        DelayedIntegrator { inner, delay }
    }
}

impl OneStepIntegrator for DelayedIntegrator {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn description(&self) -> &str {
        self.inner.description()
    }

    fn step(&self, delta: f64, t: f64, y: &StateVector, rhs: &dyn Rhs) -> StateVector {
        if !self.delay.is_zero() {
            std::thread::sleep(self.delay);
        }
        self.inner.step(delta, t, y, rhs)
    }
}

/// Speedup measurements, all durations in seconds.
#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub config: RunConfig,
    pub delay_ms: f64,
    pub repeats: usize,
    pub workers: usize,
    /// Median total fine-stage time of the serial runs.
    pub serial_fine_s: f64,
    /// Median total fine-stage time of the parallel runs.
    pub parallel_fine_s: f64,
    pub speedup: f64,
    /// Whether every parallel run matched the serial run bitwise.
    pub bitwise_identical: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(|a, b| a.total_cmp(b));
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        (samples[mid - 1] + samples[mid]) / 2.0
    }
}

fn fine_stage_seconds(result: &PararealResult) -> f64 {
    result.wall_times_s.iter().sum()
}

fn bitwise_match(a: &PararealResult, b: &PararealResult) -> bool {
    a.iterations_run == b.iterations_run
        && a.increments == b.increments
        && a.trajectory.len() == b.trajectory.len()
        && a.trajectory
            .values()
            .iter()
            .zip(b.trajectory.values())
            .all(|(x, y)| x.bits_eq(y))
}

pub fn run_speedup_bench(
    cfg: &RunConfig,
    delay_ms: f64,
    repeats: usize,
    workers: usize,
) -> Result<BenchReport> {
    if repeats == 0 {
        return Err(Error::validation("repeats", "must be at least 1"));
    }
    if !delay_ms.is_finite() || delay_ms < 0.0 {
        return Err(Error::validation(
            "delay_ms",
            format!("must be finite and non-negative, got {delay_ms}"),
        ));
    }
    if workers == 0 {
        return Err(Error::validation("workers", "must be at least 1"));
    }
    let resolved = resolve_run(cfg)?;
    let fine = DelayedIntegrator::new(resolved.fine.clone(), Duration::from_secs_f64(delay_ms / 1e3));

    // A dedicated pool guarantees `workers` threads regardless of the global
    // rayon default, so the parallel fine stage really is N-way concurrent.
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::validation("workers", e.to_string()))?;

    let mut serial_cfg = resolved.engine.clone();
    serial_cfg.parallel = false;
    let mut parallel_cfg = resolved.engine.clone();
    parallel_cfg.parallel = true;

    let mut serial_times = Vec::with_capacity(repeats);
    let mut parallel_times = Vec::with_capacity(repeats);
    let mut bitwise_identical = true;
    let mut baseline: Option<PararealResult> = None;
    for _ in 0..repeats {
        let serial = solve_parareal(
            &resolved.problem,
            &serial_cfg,
            resolved.coarse.as_ref(),
            &fine,
        )?;
        let parallel = pool.install(|| {
            solve_parareal(
                &resolved.problem,
                &parallel_cfg,
                resolved.coarse.as_ref(),
                &fine,
            )
        })?;
        serial_times.push(fine_stage_seconds(&serial));
        parallel_times.push(fine_stage_seconds(&parallel));
        let reference = baseline.get_or_insert(serial);
        bitwise_identical &= bitwise_match(reference, &parallel);
    }

    let serial_fine_s = median(&mut serial_times);
    let parallel_fine_s = median(&mut parallel_times);
    Ok(BenchReport {
        config: cfg.clone(),
        delay_ms,
        repeats,
        workers,
        serial_fine_s,
        parallel_fine_s,
        speedup: serial_fine_s / parallel_fine_s,
        bitwise_identical,
        note: (delay_ms == 0.0).then(|| {
            "zero injected delay: the fine stage is cheap arithmetic, so scheduling \
             overhead dominates and speedup near 1 is expected"
                .to_owned()
        }),
    })
}

pub fn cmd_bench(
    cfg: &RunConfig,
    delay_ms: f64,
    repeats: usize,
    workers: usize,
    json_stdout: bool,
) -> Result<()> {
    let report = run_speedup_bench(cfg, delay_ms, repeats, workers)?;
    if json_stdout {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        println!(
            "fine stage: serial {:.4} s, parallel {:.4} s, speedup {:.2}x \
             ({} workers, {} repeats, {} ms/step delay)",
            report.serial_fine_s,
            report.parallel_fine_s,
            report.speedup,
            report.workers,
            report.repeats,
            report.delay_ms,
        );
        println!(
            "numeric outputs bitwise identical: {}",
            report.bitwise_identical
        );
        if let Some(note) = &report.note {
            println!("note: {note}");
        }
    }
    Ok(())
}
