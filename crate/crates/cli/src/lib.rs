//! Command-line front end for the `gmqd` library.

use std::io::Write;
use std::path::{Path, PathBuf};

pub mod args;
mod commands;
pub mod output;
pub mod verify;

pub use args::{expand_config, Cli, Command};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Model(#[from] gmqd::Error),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("verification failed: {}", .0.join(", "))]
    Verification(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) | CliError::Model(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

/// Runs one parsed command, writing its primary output to `out` unless an
/// output path was given.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Compute(a) => commands::compute(&a, out),
        Command::Sweep(a) => commands::sweep(&a, out),
        Command::Verify(a) => commands::verify(&a, out),
        Command::Channels(a) => commands::channels(&a, out),
    }
}

/// Writes `content` to `path`, or to `out` when no path is given.
pub(crate) fn emit(path: Option<&Path>, content: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => out
            .write_all(content.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}
