//! File formats, seeded instances and the command-line front end for
//! `lions-jet-core`.

pub mod app;
pub mod formats;
pub mod instances;

/// Errors surfaced to the user. Every variant exits with status 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] lions_jet_core::Error),
}
