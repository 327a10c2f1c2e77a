use std::fmt;
use std::path::PathBuf;

/// CLI-level failures, each mapped to a process exit code:
/// config errors exit 2, budget/branch explosions exit 4, everything else 1.
/// (`--strict` assertion failures exit 3 and are handled by `main`.)
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Budget(String),
    Runtime(String),
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Budget(_) => 4,
            CliError::Runtime(_) | CliError::Io { .. } => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Budget(msg) => write!(f, "budget error: {msg}"),
            CliError::Runtime(msg) => write!(f, "{msg}"),
            CliError::Io { path, source } => {
                write!(f, "i/o error on {}: {source}", path.display())
            }
        }
    }
}

impl std::error::Error for CliError {}
