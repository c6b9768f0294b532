//! Solution CSV serialization.
//!
//! Header `t,y_0[,y_1,...]`, UTF-8, LF line endings. Values use shortest
//! round-trip decimal formatting, so parsing and re-emitting a file is
//! byte-identical.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::integrators::Trajectory;
use crate::state::StateVector;

pub fn trajectory_to_csv(trajectory: &Trajectory) -> String {
    let dim = trajectory.values().first().map_or(1, StateVector::dim);
    let mut out = String::from("t");
    for i in 0..dim {
        out.push_str(&format!(",y_{i}"));
    }
    out.push('\n');
    for (t, y) in trajectory.times().iter().zip(trajectory.values()) {
        out.push_str(&format!("{t}"));
        for i in 0..y.dim() {
            out.push_str(&format!(",{}", y[i]));
        }
        out.push('\n');
    }
    out
}

pub fn trajectory_from_csv(text: &str) -> Result<Trajectory> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::validation("csv", "empty document"))?;
    if !header.starts_with("t,y_0") {
        return Err(Error::validation(
            "csv",
            format!("unexpected header {header:?}"),
        ));
    }
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (idx, line) in lines.enumerate() {
        let mut fields = line.split(',');
        let t: f64 = fields
            .next()
            .unwrap_or_default()
            .parse()
            .map_err(|e| Error::validation("csv", format!("row {}: {e}", idx + 2)))?;
        let components: Vec<f64> = fields
            .map(|f| {
                f.parse()
                    .map_err(|e| Error::validation("csv", format!("row {}: {e}", idx + 2)))
            })
            .collect::<Result<_>>()?;
        if components.is_empty() {
            return Err(Error::validation(
                "csv",
                format!("row {}: missing state components", idx + 2),
            ));
        }
        times.push(t);
        values.push(StateVector::new(components));
    }
    Trajectory::new(times, values)
}

/// Write atomically: the target path never holds a partial document.
pub fn write_trajectory_csv(path: &Path, trajectory: &Trajectory) -> Result<()> {
    let tmp = path.with_extension("csv.tmp");
    fs::write(&tmp, trajectory_to_csv(trajectory))?;
    fs::rename(&tmp, path)?;
    Ok(())
}
