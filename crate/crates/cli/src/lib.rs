//! Command-line front end: job configuration, the report document and its
//! schema, and the acceptance suite behind `ct check`.

pub mod acceptance;
pub mod config;
pub mod job;
pub mod report;

use std::path::Path;

pub use config::{ConfigFile, JobConfig};
pub use job::run_job;
pub use report::ReportDoc;

/// The report schema shipped with the crate.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {field}: {message}")]
    Usage { field: String, message: String },
    #[error("i/o error: {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed report: {0}")]
    Report(String),
    #[error(transparent)]
    Ct(ctinv::CtError),
}

impl CliError {
    pub fn usage(field: &str, message: impl Into<String>) -> Self {
        CliError::Usage { field: field.into(), message: message.into() }
    }

    pub fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError::Io { path: path.display().to_string(), message: e.to_string() }
    }
}

impl From<ctinv::CtError> for CliError {
    fn from(e: ctinv::CtError) -> Self {
        match e {
            ctinv::CtError::InvalidConfig { field, message } => CliError::Usage { field, message },
            e => CliError::Ct(e),
        }
    }
}

impl From<mixed::MixedError> for CliError {
    fn from(e: mixed::MixedError) -> Self {
        CliError::Ct(e.into())
    }
}
