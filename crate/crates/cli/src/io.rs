use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use qss_core::{parse_code_spec, Error, ShareIndexSet, StabilizerCodeSpec};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or invalid input. Exit code 2.
    Input(String),
    /// The share set cannot reconstruct. Exit code 3.
    NotCorrectable(ShareIndexSet),
    /// Simulation disagreed with the expected result. Exit code 4.
    VerifyFailed(String),
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::NotCorrectable(_) => 3,
            CliError::VerifyFailed(_) => 4,
            CliError::Other(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::VerifyFailed(m) | CliError::Other(m) => f.write_str(m),
            CliError::NotCorrectable(j) => write!(f, "share set {j} is not correctable"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::NotSelfOrthogonal { .. }
            | Error::InvalidCode(_)
            | Error::UnsupportedPrime(_) => CliError::Input(e.to_string()),
            Error::EncodingMismatch(_) => CliError::VerifyFailed(e.to_string()),
            other => CliError::Other(other.to_string()),
        }
    }
}

pub fn load_spec(path: &Path) -> Result<StabilizerCodeSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_code_spec(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn share_set(n: usize, members: &[usize]) -> Result<ShareIndexSet, CliError> {
    ShareIndexSet::new(n, members.iter().copied()).map_err(|e| CliError::Input(e.to_string()))
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomically(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io_err = |e: std::io::Error| CliError::Other(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
