//! File formats, DOT/JSON export and the `quivercover` command line front
//! end over `quivercover-core`.

pub mod commands;
pub mod dot;
pub mod format;
pub mod report;

pub use commands::{run, Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Compute(String),
}
