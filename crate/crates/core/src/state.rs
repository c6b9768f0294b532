use std::ops::Index;

/// A point in the solution space: `d` components of `f64`, `d >= 1`.
///
/// The reference problems are scalar; the solver itself is dimension-agnostic.
/// All states exchanged within one solve share the same dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    components: Vec<f64>,
}

impl StateVector {
    pub fn new(components: Vec<f64>) -> Self {
        assert!(!components.is_empty(), "state dimension must be >= 1");
        StateVector { components }
    }

    /// One-dimensional state, the common case.
    pub fn scalar(value: f64) -> Self {
        StateVector {
            components: vec![value],
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| c.is_finite())
    }

    /// `self + scale * dir`, componentwise, one rounding per multiply and add.
    pub fn axpy(&self, scale: f64, dir: &StateVector) -> StateVector {
        debug_assert_eq!(self.dim(), dir.dim());
        StateVector {
            components: self
                .components
                .iter()
                .zip(&dir.components)
                .map(|(y, k)| y + scale * k)
                .collect(),
        }
    }

    /// Sup-norm of the componentwise difference.
    pub fn sup_diff(&self, other: &StateVector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Bitwise equality of every component.
    pub fn bits_eq(&self, other: &StateVector) -> bool {
        self.dim() == other.dim()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl Index<usize> for StateVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.components[i]
    }
}

impl From<Vec<f64>> for StateVector {
    fn from(components: Vec<f64>) -> Self {
        StateVector::new(components)
    }
}
