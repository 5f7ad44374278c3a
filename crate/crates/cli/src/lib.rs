//! Command-line companion to `monstate-core`: JSON and DOT serialization
//! plus the `monstate` subcommands.

pub mod cli;
pub mod dot;
pub mod json;

/// Errors surfaced by the command-line layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] monstate_core::Error),

    /// Malformed input documents or flag values; the message names the
    /// offending field or component.
    #[error("{0}")]
    Format(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn stdout(source: std::io::Error) -> Self {
        Error::Io {
            path: String::from("<stdout>"),
            source,
        }
    }
}

/// Process exit code for a failed invocation: 2 for blown budgets, 1 for
/// everything else. (Successful runs exit 0; a check that finds a
/// counterexample exits 3.)
pub fn exit_code(error: &Error) -> i32 {
    fn budgety(e: &monstate_core::Error) -> bool {
        match e {
            monstate_core::Error::Budget { .. } => true,
            monstate_core::Error::ChoiceFailed { source, .. } => budgety(source),
            _ => false,
        }
    }
    match error {
        Error::Core(e) if budgety(e) => 2,
        _ => 1,
    }
}
