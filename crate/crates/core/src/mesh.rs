use crate::error::{Error, Result};

/// Uniform partition of `[a, b]` into `n_sub` coarse subintervals.
///
/// Boundaries are `a + i * delta` with the final boundary forced to `b`
/// bitwise, so subdomain stitching can rely on shared boundary times.
#[derive(Clone, Debug, PartialEq)]
pub struct TimePartition {
    a: f64,
    b: f64,
    n_sub: usize,
    boundaries: Vec<f64>,
    delta_coarse: f64,
}

impl TimePartition {
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n_sub(&self) -> usize {
        self.n_sub
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// The coarse step `delta = (b - a) / n_sub`.
    pub fn delta_coarse(&self) -> f64 {
        self.delta_coarse
    }
}

/// Per-subdomain fine grid: `n_steps` uniform steps of `delta_fine` inside
/// each coarse subinterval, endpoints matching the coarse boundaries bitwise.
#[derive(Clone, Debug, PartialEq)]
pub struct FineMesh {
    n_steps: usize,
    delta_fine: f64,
    points: Vec<Vec<f64>>,
}

impl FineMesh {
    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// The fine step `delta_fine = delta_coarse / n_steps`.
    pub fn delta_fine(&self) -> f64 {
        self.delta_fine
    }

    /// Fine points of subdomain `n`: `n_steps + 1` values from `t_n` to `t_{n+1}`.
    pub fn subdomain(&self, n: usize) -> &[f64] {
        &self.points[n]
    }

    pub fn n_sub(&self) -> usize {
        self.points.len()
    }

    /// All fine points left to right with the duplicate at each shared
    /// boundary removed: a strictly increasing grid of `N * M + 1` times.
    pub fn concatenated_times(&self) -> Vec<f64> {
        let mut times = Vec::with_capacity(self.points.len() * self.n_steps + 1);
        times.push(self.points[0][0]);
        for row in &self.points {
            times.extend_from_slice(&row[1..]);
        }
        times
    }
}

pub fn make_partition(a: f64, b: f64, n_sub: usize) -> Result<TimePartition> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::validation(
            "interval",
            format!("endpoints must be finite, got [{a}, {b}]"),
        ));
    }
    if a >= b {
        return Err(Error::validation(
            "interval",
            format!("left endpoint must be below right endpoint, got [{a}, {b}]"),
        ));
    }
    if n_sub == 0 {
        return Err(Error::validation("n_coarse", "must be at least 1"));
    }
    let delta_coarse = (b - a) / n_sub as f64;
    let mut boundaries: Vec<f64> = (0..=n_sub).map(|i| a + i as f64 * delta_coarse).collect();
    boundaries[n_sub] = b;
    Ok(TimePartition {
        a,
        b,
        n_sub,
        boundaries,
        delta_coarse,
    })
}

pub fn make_fine_mesh(partition: &TimePartition, n_steps: usize) -> Result<FineMesh> {
    if n_steps == 0 {
        return Err(Error::validation("n_fine", "must be at least 1"));
    }
    let delta_fine = partition.delta_coarse() / n_steps as f64;
    let bounds = partition.boundaries();
    let points = (0..partition.n_sub())
        .map(|n| {
            let mut row: Vec<f64> = (0..=n_steps)
                .map(|m| bounds[n] + m as f64 * delta_fine)
                .collect();
            row[n_steps] = bounds[n + 1];
            row
        })
        .collect();
    Ok(FineMesh {
        n_steps,
        delta_fine,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_partition_is_exact() {
        let p = make_partition(0.0, 1.0, 4).unwrap();
        assert_eq!(p.boundaries(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(p.delta_coarse(), 0.25);
    }

    #[test]
    fn reference_partition_has_spacing_four() {
        let p = make_partition(-20.0, 20.0, 10).unwrap();
        assert_eq!(p.boundaries().len(), 11);
        assert_eq!(p.delta_coarse(), 4.0);
        for w in p.boundaries().windows(2) {
            assert_eq!(w[1] - w[0], 4.0);
        }
    }

    #[test]
    fn single_subdomain_partition() {
        let p = make_partition(0.0, 1.0, 1).unwrap();
        assert_eq!(p.boundaries(), &[0.0, 1.0]);
    }

    #[test]
    fn partition_rejects_bad_inputs() {
        assert!(make_partition(0.0, 1.0, 0).is_err());
        assert!(make_partition(1.0, 0.0, 4).is_err());
        assert!(make_partition(0.0, f64::INFINITY, 4).is_err());
    }

    #[test]
    fn fine_mesh_splits_subdomains_uniformly() {
        let p = make_partition(0.0, 1.0, 2).unwrap();
        let m = make_fine_mesh(&p, 2).unwrap();
        assert_eq!(m.subdomain(0), &[0.0, 0.25, 0.5]);
        assert_eq!(m.subdomain(1), &[0.5, 0.75, 1.0]);
    }

    #[test]
    fn reference_fine_mesh_delta() {
        let p = make_partition(-20.0, 20.0, 10).unwrap();
        let m = make_fine_mesh(&p, 500).unwrap();
        assert_eq!(m.delta_fine(), 0.008);
        assert_eq!(m.subdomain(0).len(), 501);
    }

    #[test]
    fn degenerate_fine_mesh_equals_partition() {
        let p = make_partition(0.0, 1.0, 1).unwrap();
        let m = make_fine_mesh(&p, 1).unwrap();
        assert_eq!(m.subdomain(0), p.boundaries());
        assert_eq!(m.delta_fine(), p.delta_coarse());
    }

    #[test]
    fn fine_mesh_rejects_zero_steps() {
        let p = make_partition(0.0, 1.0, 2).unwrap();
        assert!(make_fine_mesh(&p, 0).is_err());
    }

    #[test]
    fn endpoints_match_boundaries_bitwise() {
        let p = make_partition(-3.5, 11.25, 7).unwrap();
        let m = make_fine_mesh(&p, 13).unwrap();
        for n in 0..p.n_sub() {
            let row = m.subdomain(n);
            assert_eq!(row[0].to_bits(), p.boundaries()[n].to_bits());
            assert_eq!(row[13].to_bits(), p.boundaries()[n + 1].to_bits());
        }
    }
}
