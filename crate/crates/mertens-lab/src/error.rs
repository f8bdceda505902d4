use std::path::PathBuf;

/// Crate-wide error type.
///
/// Variants are grouped by failure class: argument validation, resource
/// limits, domain restrictions of individual bounds, and checkpoint I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument {
        name: &'static str,
        reason: String,
    },

    /// An allocation was refused by the allocator (tables at this size do
    /// not fit); surfaced as an error instead of an abort.
    #[error("allocation of {requested} bytes for {what} failed")]
    AllocationFailed { what: &'static str, requested: usize },

    /// A segmented sieve was asked to cover a range its prime table cannot
    /// certify. The table must contain every prime up to floor(sqrt(hi)).
    #[error("prime table covers p <= {available} but the segment needs p <= {required}")]
    PrimeTableTooSmall { required: u64, available: u64 },

    /// Brute-force enumeration over 3^n configurations was requested for a
    /// chain too long to enumerate.
    #[error("chain length {n} exceeds the brute-force enumeration limit of {max}")]
    ChainTooLong { n: usize, max: usize },

    /// A bound was evaluated outside the range where it is proved.
    #[error("bound `{bound}` is only valid for n {condition}; got n = {n}")]
    BoundOutOfDomain {
        bound: &'static str,
        condition: &'static str,
        n: u64,
    },

    /// Two computation routes that must agree did not.
    #[error("cross-check failed: {detail}")]
    CrossCheckFailed { detail: String },

    /// No checkpoint file exists at the given path.
    #[error("checkpoint not found: {path}")]
    CheckpointNotFound { path: PathBuf },

    /// A checkpoint file exists but cannot be trusted (bad header, bad
    /// field, or checksum mismatch).
    #[error("corrupt checkpoint {path}: {reason}")]
    CheckpointCorrupt { path: PathBuf, reason: String },

    /// Underlying I/O failure while reading or writing a checkpoint or
    /// report file.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}
