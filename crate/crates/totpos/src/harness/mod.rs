//! CLI plumbing: configuration, probe orchestration, and report emission.

mod config;
mod emit;
mod report;
mod suites;

pub use config::{OutputFormat, ProbeConfig, Suite, ALL_SUITES};
pub use emit::{emit_matrix, matrix_to_csv, matrix_to_json};
pub use report::{ProbeReport, ProbeStatus, ReportDocument, Summary};
pub use suites::run_suite;
