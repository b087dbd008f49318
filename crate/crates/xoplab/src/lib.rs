//! Command-line front end for `xoplab-core`: evaluation, zeros, coefficient
//! tables and the verification report.

pub mod commands;
pub mod config;
pub mod output;
pub mod report;
pub mod suites;
pub mod target;

/// Bad input from the user; the CLI exits with status 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);
