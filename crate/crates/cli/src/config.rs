//! Run configuration with three-layer precedence: command-line flags
//! override config-file values, which override built-in defaults.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use parareal::{Error, Result};

/// Fully resolved run parameters, echoed verbatim into run reports.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub problem: String,
    pub coarse: String,
    pub fine: String,
    pub n_coarse: usize,
    pub n_fine: usize,
    pub iterations: usize,
    pub tolerance: Option<f64>,
    pub parallel: bool,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    pub format: FrameFormatOpt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_chunk: Option<usize>,
    pub show_prev: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            problem: "sin_ty".to_owned(),
            coarse: "euler".to_owned(),
            fine: "rk4".to_owned(),
            n_coarse: 10,
            n_fine: 500,
            iterations: 10,
            tolerance: None,
            parallel: true,
            seed: 0,
            out: None,
            out_dir: None,
            format: FrameFormatOpt::Csv,
            max_chunk: None,
            show_prev: false,
        }
    }
}

/// Frame output format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FrameFormatOpt {
    Csv,
    Svg,
}

impl From<FrameFormatOpt> for parareal::diagnostics::FrameFormat {
    fn from(opt: FrameFormatOpt) -> Self {
        match opt {
            FrameFormatOpt::Csv => parareal::diagnostics::FrameFormat::Csv,
            FrameFormatOpt::Svg => parareal::diagnostics::FrameFormat::Svg,
        }
    }
}

/// The JSON config-file document: every `RunConfig` field, each optional.
/// Unknown keys are rejected so typos fail loudly.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub problem: Option<String>,
    pub coarse: Option<String>,
    pub fine: Option<String>,
    pub n_coarse: Option<usize>,
    pub n_fine: Option<usize>,
    pub iterations: Option<usize>,
    pub tolerance: Option<f64>,
    pub parallel: Option<bool>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub format: Option<FrameFormatOpt>,
    pub max_chunk: Option<usize>,
    pub show_prev: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| {
            Error::validation("config", format!("{}: {e}", path.display()))
        })
    }
}

/// Flag-level overrides collected from the command line. `None` means the
/// flag was not given.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub problem: Option<String>,
    pub coarse: Option<String>,
    pub fine: Option<String>,
    pub n_coarse: Option<usize>,
    pub n_fine: Option<usize>,
    pub iterations: Option<usize>,
    pub tolerance: Option<f64>,
    pub parallel: Option<bool>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub format: Option<FrameFormatOpt>,
    pub max_chunk: Option<usize>,
    pub show_prev: Option<bool>,
}

pub fn resolve(flags: Overrides, file: Option<ConfigFile>) -> RunConfig {
    let file = file.unwrap_or_default();
    let defaults = RunConfig::default();
    RunConfig {
        problem: flags.problem.or(file.problem).unwrap_or(defaults.problem),
        coarse: flags.coarse.or(file.coarse).unwrap_or(defaults.coarse),
        fine: flags.fine.or(file.fine).unwrap_or(defaults.fine),
        n_coarse: flags
            .n_coarse
            .or(file.n_coarse)
            .unwrap_or(defaults.n_coarse),
        n_fine: flags.n_fine.or(file.n_fine).unwrap_or(defaults.n_fine),
        iterations: flags
            .iterations
            .or(file.iterations)
            .unwrap_or(defaults.iterations),
        tolerance: flags.tolerance.or(file.tolerance),
        parallel: flags
            .parallel
            .or(file.parallel)
            .unwrap_or(defaults.parallel),
        seed: flags.seed.or(file.seed).unwrap_or(defaults.seed),
        out: flags.out.or(file.out),
        out_dir: flags.out_dir.or(file.out_dir),
        format: flags.format.or(file.format).unwrap_or(defaults.format),
        max_chunk: flags.max_chunk.or(file.max_chunk),
        show_prev: flags
            .show_prev
            .or(file.show_prev)
            .unwrap_or(defaults.show_prev),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beats_defaults() {
        let file = ConfigFile {
            problem: Some("linear".into()),
            n_coarse: Some(4),
            seed: Some(9),
            ..Default::default()
        };
        let flags = Overrides {
            n_coarse: Some(6),
            ..Default::default()
        };
        let cfg = resolve(flags, Some(file));
        assert_eq!(cfg.problem, "linear"); // file
        assert_eq!(cfg.n_coarse, 6); // flag
        assert_eq!(cfg.seed, 9); // file
        assert_eq!(cfg.n_fine, 500); // default
    }

    #[test]
    fn config_file_rejects_unknown_keys() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(&path, r#"{"n_corase": 3}"#).unwrap();
        assert!(ConfigFile::load(&path).is_err());
    }

    #[test]
    fn config_file_round_trips_fields() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(
            &path,
            r#"{"problem": "zero", "iterations": 2, "parallel": false, "format": "svg"}"#,
        )
        .unwrap();
        let file = ConfigFile::load(&path).unwrap();
        let cfg = resolve(Overrides::default(), Some(file));
        assert_eq!(cfg.problem, "zero");
        assert_eq!(cfg.iterations, 2);
        assert!(!cfg.parallel);
        assert_eq!(cfg.format, FrameFormatOpt::Svg);
    }
}
