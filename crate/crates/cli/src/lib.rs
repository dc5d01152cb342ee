//! Configuration, orchestration and file output for the robinscat experiments.

pub mod config;
pub mod io;
pub mod run;
pub mod tables;

pub use config::{ConfigError, ExperimentConfig};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const RUNTIME: u8 = 1;
    pub const VALIDATION: u8 = 2;
    pub const ACCEPTANCE: u8 = 3;
}

/// Validation-class failures (bad config, bad input files, parameters the
/// solvers refuse) map to [`exit::VALIDATION`]; everything else is a runtime error.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    use robinscat::Error as E;
    for cause in e.chain() {
        if cause.downcast_ref::<ConfigError>().is_some() {
            return exit::VALIDATION;
        }
        if let Some(err) = cause.downcast_ref::<E>() {
            return match err {
                E::InvalidGeometry(_)
                | E::InvalidDiscretization(_)
                | E::InvalidParameter(_)
                | E::WrongSolver(_)
                | E::ShapeMismatch { .. }
                | E::Parse(_) => exit::VALIDATION,
                _ => exit::RUNTIME,
            };
        }
    }
    exit::RUNTIME
}
