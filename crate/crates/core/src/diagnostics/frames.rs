//! File-based frame emission for recorded simulation traces.
//!
//! Each event batch of a trace (the guesses at the start of an iteration,
//! each fine chunk, the connect step) becomes one frame showing the
//! cumulative picture of its iteration. Frames are a pure function of the
//! trace: identical traces yield byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::diagnostics::trace::{ColorTag, SimEvent, SimulationTrace};
use crate::error::Result;
use crate::state::StateVector;

/// Frame file format. CSV frames carry `series,t,y,color` rows; SVG frames
/// render the same data in a fixed 800x600 viewport.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameFormat {
    Csv,
    Svg,
}

impl FrameFormat {
    pub fn extension(self) -> &'static str {
        match self {
            FrameFormat::Csv => "csv",
            FrameFormat::Svg => "svg",
        }
    }
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;
const IDEAL_COLOR: &str = "blue";

struct Guess {
    t: f64,
    y: f64,
    color: ColorTag,
}

struct Chunk {
    subdomain: usize,
    from_step: usize,
    points: Vec<(f64, f64)>,
}

/// Cumulative drawing state of one iteration. Only component 0 of each state
/// is plotted; the reference simulation is scalar.
struct FrameState<'a> {
    trace: &'a SimulationTrace,
    iteration: usize,
    guesses: Vec<Guess>,
    chunks: Vec<Chunk>,
    connected: bool,
    y_min: f64,
    y_max: f64,
}

impl<'a> FrameState<'a> {
    fn new(trace: &'a SimulationTrace, iteration: usize, extent: (f64, f64)) -> Self {
        FrameState {
            trace,
            iteration,
            guesses: Vec::new(),
            chunks: Vec::new(),
            connected: false,
            y_min: extent.0,
            y_max: extent.1,
        }
    }

    /// Per-subdomain values of the current iterate, assembled from the
    /// iteration's chunks. Indexed `[subdomain][step]`.
    fn connected_curve(&self) -> Vec<Vec<Option<f64>>> {
        let n_sub = self.trace.partition.n_sub();
        let m = self.trace.mesh.n_steps();
        let mut rows = vec![vec![None; m + 1]; n_sub];
        for chunk in &self.chunks {
            for (offset, &(_t, y)) in chunk.points.iter().enumerate() {
                rows[chunk.subdomain][chunk.from_step + offset] = Some(y);
            }
        }
        rows
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("series,t,y,color\n");
        for (t, y) in self
            .trace
            .ideal
            .times()
            .iter()
            .zip(self.trace.ideal.values())
        {
            let _ = writeln!(out, "ideal,{t},{},{IDEAL_COLOR}", y[0]);
        }
        for g in &self.guesses {
            let series = match g.color {
                ColorTag::Red => "prev_guess",
                _ => "guess",
            };
            let _ = writeln!(out, "{series},{},{},{}", g.t, g.y, g.color.as_str());
        }
        for chunk in &self.chunks {
            for (t, y) in &chunk.points {
                let _ = writeln!(
                    out,
                    "fine_{},{t},{y},{}",
                    chunk.subdomain,
                    ColorTag::Black.as_str()
                );
            }
        }
        if self.connected {
            let curve = self.connected_curve();
            for (n, row) in curve.iter().enumerate() {
                let times = self.trace.mesh.subdomain(n);
                for (m, y) in row.iter().enumerate() {
                    if let Some(y) = y {
                        let _ = writeln!(
                            out,
                            "connected,{},{y},{}",
                            times[m],
                            ColorTag::Orange.as_str()
                        );
                    }
                }
            }
        }
        out
    }

    fn x_px(&self, t: f64) -> f64 {
        let a = self.trace.partition.a();
        let b = self.trace.partition.b();
        MARGIN + (t - a) / (b - a) * (WIDTH - 2.0 * MARGIN)
    }

    fn y_px(&self, y: f64) -> f64 {
        let span = self.y_max - self.y_min;
        HEIGHT - MARGIN - (y - self.y_min) / span * (HEIGHT - 2.0 * MARGIN)
    }

    fn polyline(&self, out: &mut String, points: &[(f64, f64)], color: &str) {
        if points.is_empty() {
            return;
        }
        let _ = write!(out, "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1\" points=\"");
        for (i, (t, y)) in points.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{:.2},{:.2}", self.x_px(*t), self.y_px(*y));
        }
        out.push_str("\"/>\n");
    }

    fn to_svg(&self) -> String {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
        );
        let _ = writeln!(
            out,
            "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
        );
        let _ = writeln!(
            out,
            "  <rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#cccccc\"/>",
            WIDTH - 2.0 * MARGIN,
            HEIGHT - 2.0 * MARGIN
        );
        let _ = writeln!(
            out,
            "  <title>iteration {} of {}</title>",
            self.iteration, self.trace.iterations
        );

        let ideal: Vec<(f64, f64)> = self
            .trace
            .ideal
            .times()
            .iter()
            .zip(self.trace.ideal.values())
            .map(|(t, y)| (*t, y[0]))
            .collect();
        self.polyline(&mut out, &ideal, IDEAL_COLOR);

        for chunk in &self.chunks {
            self.polyline(&mut out, &chunk.points, ColorTag::Black.as_str());
        }
        for g in &self.guesses {
            let _ = writeln!(
                out,
                "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{}\"/>",
                self.x_px(g.t),
                self.y_px(g.y),
                g.color.as_str()
            );
        }
        if self.connected {
            let curve = self.connected_curve();
            let mut points = Vec::new();
            for (n, row) in curve.iter().enumerate() {
                let times = self.trace.mesh.subdomain(n);
                for (m, y) in row.iter().enumerate() {
                    if let Some(y) = y {
                        points.push((times[m], *y));
                    }
                }
            }
            self.polyline(&mut out, &points, ColorTag::Orange.as_str());
        }
        out.push_str("</svg>\n");
        out
    }

    fn render(&self, format: FrameFormat) -> String {
        match format {
            FrameFormat::Csv => self.to_csv(),
            FrameFormat::Svg => self.to_svg(),
        }
    }
}

fn data_extent(trace: &SimulationTrace) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut take = |y: f64| {
        lo = lo.min(y);
        hi = hi.max(y);
    };
    for v in trace.ideal.values() {
        take(v[0]);
    }
    for ev in &trace.events {
        match ev {
            SimEvent::CoarseGuess { value, .. } => take(value[0]),
            SimEvent::FineChunk { values, .. } => {
                for v in values {
                    take(v[0]);
                }
            }
            SimEvent::IterationConnected { .. } => {}
        }
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        // Flat data: open a unit band so the mapping stays linear.
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn chunk_points(trace: &SimulationTrace, subdomain: usize, from: usize, values: &[StateVector]) -> Vec<(f64, f64)> {
    let times = trace.mesh.subdomain(subdomain);
    values
        .iter()
        .enumerate()
        .map(|(offset, v)| (times[from + offset], v[0]))
        .collect()
}

/// Emit one frame file per event batch plus a `frames.json` index listing
/// the frames in order. Frame files are named `frame_<k>_<seq>.<ext>` with
/// zero-padded iteration and per-iteration sequence numbers. The index is
/// written last, atomically, so an aborted run never leaves a partial index.
pub fn emit_frames(
    trace: &SimulationTrace,
    out_dir: &Path,
    format: FrameFormat,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let extent = data_extent(trace);

    let mut written = Vec::new();
    let mut names = Vec::new();
    let mut state: Option<FrameState<'_>> = None;
    let mut seq = 0usize;
    let mut pending_guesses = false;

    let flush = |state: &FrameState<'_>, seq: &mut usize, written: &mut Vec<PathBuf>, names: &mut Vec<String>| -> Result<()> {
        let name = format!(
            "frame_{:02}_{:04}.{}",
            state.iteration,
            seq,
            format.extension()
        );
        let path = out_dir.join(&name);
        fs::write(&path, state.render(format))?;
        names.push(name);
        written.push(path);
        *seq += 1;
        Ok(())
    };

    for ev in &trace.events {
        match ev {
            SimEvent::CoarseGuess {
                iteration,
                subdomain,
                value,
                color,
            } => {
                if state.as_ref().map(|s| s.iteration) != Some(*iteration) {
                    state = Some(FrameState::new(trace, *iteration, extent));
                    seq = 0;
                }
                let s = state.as_mut().unwrap();
                s.guesses.push(Guess {
                    t: trace.partition.boundaries()[*subdomain],
                    y: value[0],
                    color: *color,
                });
                pending_guesses = true;
            }
            SimEvent::FineChunk {
                iteration,
                subdomain,
                from_step,
                values,
                ..
            } => {
                let s = state.as_mut().expect("chunk precedes guesses");
                debug_assert_eq!(s.iteration, *iteration);
                if pending_guesses {
                    flush(s, &mut seq, &mut written, &mut names)?;
                    pending_guesses = false;
                }
                s.chunks.push(Chunk {
                    subdomain: *subdomain,
                    from_step: *from_step,
                    points: chunk_points(trace, *subdomain, *from_step, values),
                });
                flush(s, &mut seq, &mut written, &mut names)?;
            }
            SimEvent::IterationConnected { iteration } => {
                let s = state.as_mut().expect("connect precedes guesses");
                debug_assert_eq!(s.iteration, *iteration);
                if pending_guesses {
                    flush(s, &mut seq, &mut written, &mut names)?;
                    pending_guesses = false;
                }
                s.connected = true;
                flush(s, &mut seq, &mut written, &mut names)?;
            }
        }
    }
    if pending_guesses {
        let s = state.as_ref().unwrap();
        flush(s, &mut seq, &mut written, &mut names)?;
    }

    let index = serde_json::to_string_pretty(&serde_json::json!({ "frames": names }))
        .expect("index serialization cannot fail");
    let index_path = out_dir.join("frames.json");
    let tmp = out_dir.join("frames.json.tmp");
    fs::write(&tmp, index + "\n")?;
    fs::rename(&tmp, &index_path)?;
    written.push(index_path);
    Ok(written)
}
