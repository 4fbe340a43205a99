use std::fmt;
use std::io;
use std::path::PathBuf;

/// Failure of a subcommand, carrying its exit code.
///
/// Exit codes: 0 for a clean run, 1 when a property or cross-check fails,
/// 2 for configuration errors (clap uses the same code for bad flags), 3 for
/// I/O problems.
#[derive(Debug)]
pub enum CmdError {
    Config(String),
    Check(String),
    Io { path: PathBuf, source: io::Error },
}

impl CmdError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CmdError::Check(_) => 1,
            CmdError::Config(_) => 2,
            CmdError::Io { .. } => 3,
        }
    }

    /// True when the error is the reader of our output going away, which is
    /// not a failure of this process (think `amicable ... | head`).
    pub fn is_broken_pipe(&self) -> bool {
        matches!(
            self,
            CmdError::Io { source, .. } if source.kind() == io::ErrorKind::BrokenPipe
        )
    }
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmdError::Config(msg) => write!(f, "{msg}"),
            CmdError::Check(msg) => write!(f, "{msg}"),
            CmdError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CmdError {}
