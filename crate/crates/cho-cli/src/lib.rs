//! Batch driver for confined-oscillator sweeps: a TOML run description plus
//! flag overrides goes in, a CSV or JSON table with one row per sweep point
//! and state comes out.

pub mod config;
pub mod report;
pub mod run;

pub use config::{ConfigFile, Overrides, RunSpec};
pub use report::{emit_table, Cell, ReportRow, Table};
pub use run::{run, run_with_threads, threads_from_env, RunOutcome};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),

    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("report: {0}")]
    Report(String),
}
