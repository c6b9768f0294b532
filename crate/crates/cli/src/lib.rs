//! Command-line front end for the parareal solver: run-configuration
//! layering, the `solve`/`simulate`/`bench`/`catalog` commands, and the
//! stable exit-code contract (0 success, 2 validation, 3 numeric, 4 I/O).

pub mod bench;
pub mod commands;
pub mod config;
pub mod opts;

use parareal::Error;
use serde::Serialize;

pub use config::{resolve, ConfigFile, FrameFormatOpt, Overrides, RunConfig};

/// Exit code for a failed command.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Validation { .. } | Error::MissingHistory(_) | Error::OrderIndeterminate { .. } => 2,
        Error::NonFinite { .. } => 3,
        Error::Io(_) => 4,
    }
}

/// One machine-readable JSON line describing a failure, for standard error.
pub fn error_line(error: &Error) -> String {
    #[derive(Serialize)]
    struct ErrorBody<'a> {
        kind: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        field: Option<&'a str>,
        message: String,
    }
    #[derive(Serialize)]
    struct ErrorLine<'a> {
        error: ErrorBody<'a>,
    }
    let (kind, field) = match error {
        Error::Validation { field, .. } => ("validation", Some(*field)),
        Error::MissingHistory(_) => ("usage", None),
        Error::OrderIndeterminate { .. } => ("validation", None),
        Error::NonFinite { .. } => ("numeric", None),
        Error::Io(_) => ("io", None),
    };
    serde_json::to_string(&ErrorLine {
        error: ErrorBody {
            kind,
            field,
            message: error.to_string(),
        },
    })
    .expect("error line serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(exit_code(&Error::validation("n_coarse", "zero")), 2);
        assert_eq!(
            exit_code(&Error::NonFinite {
                stage: "fine",
                iteration: 1,
                subdomain: 0,
                step: 3,
            }),
            3
        );
        assert_eq!(
            exit_code(&Error::Io(std::io::Error::other("disk gone"))),
            4
        );
    }

    #[test]
    fn error_line_names_the_field() {
        let line = error_line(&Error::validation("n_coarse", "must be at least 1"));
        let value: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(value["error"]["kind"], "validation");
        assert_eq!(value["error"]["field"], "n_coarse");
        assert!(value["error"]["message"]
            .as_str()
            .unwrap()
            .contains("n_coarse"));
    }
}
