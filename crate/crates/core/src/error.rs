use thiserror::Error;

/// Errors produced by solvers, diagnostics, and file emission.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on user input failed. `field` names the offending input.
    #[error("invalid {field}: {message}")]
    Validation { field: &'static str, message: String },

    /// A state became NaN or infinite while integrating.
    #[error("non-finite state in {stage} stage: iteration {iteration}, subdomain {subdomain}, step {step}")]
    NonFinite {
        stage: &'static str,
        iteration: usize,
        subdomain: usize,
        step: usize,
    },

    /// An operation needed the per-iteration history but the solve was run
    /// without `keep_history`.
    #[error("iteration history required: {0}")]
    MissingHistory(&'static str),

    /// The integrator is exact on the test problem, so no order can be fit.
    #[error("order indeterminate: zero global error at step size {step_size}")]
    OrderIndeterminate { step_size: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn validation(field: &'static str, message: impl Into<String>) -> Self {
        Error::Validation {
            field,
            message: message.into(),
        }
    }

    /// Attach the correction-iteration index to a blow-up reported by a
    /// lower-level sweep.
    pub(crate) fn with_iteration(self, k: usize) -> Self {
        match self {
            Error::NonFinite {
                stage,
                subdomain,
                step,
                ..
            } => Error::NonFinite {
                stage,
                iteration: k,
                subdomain,
                step,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
