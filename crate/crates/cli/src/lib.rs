//! Library side of the `pauli-line` command: report assembly, text and JSON
//! rendering, DOT export and the verification sweep.

pub mod dot;
pub mod points;
pub mod report;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] pauli_line::Error),
    #[error("failed to serialize output: {0}")]
    Json(#[from] serde_json::Error),
}

/// Exit status for usage and budget errors.
pub const EXIT_USAGE: u8 = 2;
/// Exit status when a verification check fails.
pub const EXIT_VERIFICATION: u8 = 1;

/// Parses `b,c`.
pub fn parse_vector(s: &str) -> Result<(u64, u64), String> {
    let (b, c) = s
        .split_once(',')
        .ok_or_else(|| format!("expected b,c, got {s:?}"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<u64>()
            .map_err(|_| format!("invalid coordinate {x:?}"))
    };
    Ok((parse(b)?, parse(c)?))
}
