//! The `solve`, `simulate`, and `catalog` commands.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;

use parareal::catalog::ClosedForm;
use parareal::diagnostics::{
    boundary_errors, emit_frames, record_simulation, ErrorReport, ReferenceSolution,
};
use parareal::io::write_trajectory_csv;
use parareal::{
    solve_parareal, Error, IntegratorRegistry, IvpProblem, OneStepIntegrator, PararealConfig,
    ProblemCatalog, Result,
};

use crate::config::RunConfig;

/// Everything a command needs, with every name resolved up front: an invalid
/// name never produces partial output files.
pub struct Resolved {
    pub problem: IvpProblem,
    pub closed_form: Option<ClosedForm>,
    pub coarse: Arc<dyn OneStepIntegrator>,
    pub fine: Arc<dyn OneStepIntegrator>,
    pub engine: PararealConfig,
}

pub fn resolve_run(cfg: &RunConfig) -> Result<Resolved> {
    let catalog = ProblemCatalog::builtin();
    let registry = IntegratorRegistry::builtin();
    let spec = catalog.get(&cfg.problem)?;
    let coarse = registry.get(&cfg.coarse)?;
    let fine = registry.get(&cfg.fine)?;
    let mut engine = PararealConfig::new(cfg.n_coarse, cfg.n_fine, cfg.iterations);
    engine.stop_tolerance = cfg.tolerance;
    engine.parallel = cfg.parallel;
    engine.validate()?;
    Ok(Resolved {
        problem: spec.problem(),
        closed_form: spec.closed_form.clone(),
        coarse,
        fine,
        engine,
    })
}

/// Run report written next to the solution CSV.
#[derive(Serialize)]
pub struct RunReport<'a> {
    pub config: &'a RunConfig,
    pub iterations_run: usize,
    pub increments: &'a [f64],
    pub wall_times_s: &'a [f64],
    pub errors: &'a ErrorReport,
}

fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn cmd_solve(cfg: &RunConfig, json_stdout: bool) -> Result<()> {
    let mut resolved = resolve_run(cfg)?;
    resolved.engine.keep_history = true;
    let out = cfg
        .out
        .clone()
        .ok_or_else(|| Error::validation("out", "solve requires an output path (--out)"))?;

    let result = solve_parareal(
        &resolved.problem,
        &resolved.engine,
        resolved.coarse.as_ref(),
        resolved.fine.as_ref(),
    )?;
    let reference = match &resolved.closed_form {
        Some(f) => ReferenceSolution::closed_form(f.clone()),
        None => ReferenceSolution::sequential_fine(
            &resolved.problem,
            &result.mesh,
            resolved.fine.as_ref(),
        )?,
    };
    let errors = boundary_errors(&result, &reference)?;

    write_trajectory_csv(&out, &result.trajectory)?;
    let report_path = report_path_for(&out);
    let report = RunReport {
        config: cfg,
        iterations_run: result.iterations_run,
        increments: &result.increments,
        wall_times_s: &result.wall_times_s,
        errors: &errors,
    };
    write_json_atomic(&report_path, &report)?;

    if json_stdout {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        println!(
            "wrote {} ({} rows) and {}; {} iterations, final increment {}",
            out.display(),
            result.trajectory.len(),
            report_path.display(),
            result.iterations_run,
            result.increments.last().copied().unwrap_or(0.0),
        );
    }
    Ok(())
}

/// `sol.csv` -> `sol.report.json`; extensionless paths gain `.report.json`.
pub fn report_path_for(out: &Path) -> PathBuf {
    out.with_extension("report.json")
}

pub fn cmd_simulate(cfg: &RunConfig, json_stdout: bool) -> Result<()> {
    let resolved = resolve_run(cfg)?;
    let out_dir = cfg.out_dir.clone().ok_or_else(|| {
        Error::validation("out_dir", "simulate requires an output directory (--out-dir)")
    })?;
    let max_chunk = cfg.max_chunk.unwrap_or(cfg.n_fine);
    let trace = record_simulation(
        &resolved.problem,
        &resolved.engine,
        resolved.coarse.as_ref(),
        resolved.fine.as_ref(),
        cfg.seed,
        max_chunk,
        cfg.show_prev,
    )?;
    let written = emit_frames(&trace, &out_dir, cfg.format.into())?;
    // The last entry is the frames.json index, not a frame.
    let frame_count = written
        .iter()
        .filter(|p| p.file_name().is_some_and(|n| n != "frames.json"))
        .count();
    if json_stdout {
        #[derive(Serialize)]
        struct SimulateSummary<'a> {
            frames: usize,
            out_dir: &'a Path,
        }
        let summary = SimulateSummary {
            frames: frame_count,
            out_dir: &out_dir,
        };
        println!(
            "{}",
            serde_json::to_string(&summary).expect("summary serializes")
        );
    } else {
        println!("wrote {} frames to {}", frame_count, out_dir.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct CatalogProblem<'a> {
    name: &'a str,
    description: &'a str,
    a: f64,
    b: f64,
    y0: &'a [f64],
    has_closed_form: bool,
}

#[derive(Serialize)]
struct CatalogIntegrator<'a> {
    name: &'a str,
    description: &'a str,
}

#[derive(Serialize)]
struct CatalogDump<'a> {
    problems: Vec<CatalogProblem<'a>>,
    integrators: Vec<CatalogIntegrator<'a>>,
}

pub fn cmd_catalog(json_stdout: bool) -> Result<()> {
    let catalog = ProblemCatalog::builtin();
    let registry = IntegratorRegistry::builtin();
    if json_stdout {
        let dump = CatalogDump {
            problems: catalog
                .iter()
                .map(|p| CatalogProblem {
                    name: p.name,
                    description: p.description,
                    a: p.a,
                    b: p.b,
                    y0: &p.y0,
                    has_closed_form: p.closed_form.is_some(),
                })
                .collect(),
            integrators: registry
                .iter()
                .map(|i| CatalogIntegrator {
                    name: i.name(),
                    description: i.description(),
                })
                .collect(),
        };
        println!("{}", serde_json::to_string(&dump).expect("dump serializes"));
    } else {
        println!("problems:");
        for p in catalog.iter() {
            println!("  {:<12} {}", p.name, p.description);
        }
        println!("integrators:");
        for i in registry.iter() {
            println!("  {:<12} {}", i.name(), i.description());
        }
    }
    Ok(())
}
