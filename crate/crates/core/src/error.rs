use std::path::PathBuf;

use crate::model::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{what} = {value} outside valid range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "coverage below Hata validity floor: max allowed path loss {max_allowed_pl_db:.2} dB < PL(1 km) = {floor_pl_db:.2} dB"
    )]
    CoverageBelowHataFloor {
        max_allowed_pl_db: f64,
        floor_pl_db: f64,
    },

    #[error("eNB index {index} out of range for {size} eNBs")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("eNB {enb} has degree {degree} >= {channels} channels")]
    DegreeTooHigh {
        enb: usize,
        degree: usize,
        channels: usize,
    },

    #[error("fairness index undefined for an all-zero throughput vector")]
    ZeroThroughput,

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("topology validation failed: {}", join_violations(.0))]
    Validation(Vec<Violation>),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("rejection budget of {attempts} topologies exhausted at density {enb_count} eNBs")]
    RejectionBudgetExceeded { enb_count: usize, attempts: usize },

    #[error("internal invariant breached: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
