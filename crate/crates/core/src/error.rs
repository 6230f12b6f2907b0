use thiserror::Error;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid kernel point (k={k}, s={s}, w={w}): {reason}")]
    InvalidPoint {
        k: i64,
        s: i64,
        w: i64,
        reason: PointViolation,
    },

    #[error("insufficient precision: need {needed}, have {available} (max safe output precision {max_safe})")]
    InsufficientPrecision {
        needed: usize,
        available: usize,
        max_safe: usize,
    },

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric accuracy not reached: {0}")]
    Accuracy(String),

    #[error("parse error: {0}")]
    Parse(String),
}

/// The condition of the kernel-point lattice that a candidate `(k, s, w)` violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointViolation {
    OddWeight,
    WeightTooSmall,
    SOutOfRange,
    WOutOfRange,
    SameParity,
}

impl std::fmt::Display for PointViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let msg = match self {
            PointViolation::OddWeight => "weight k must be even",
            PointViolation::WeightTooSmall => "weight k must be at least 4",
            PointViolation::SOutOfRange => "s must lie in [1, k-1]",
            PointViolation::WOutOfRange => "w must lie in [1, k-1]",
            PointViolation::SameParity => "s and w must have opposite parity",
        };
        f.write_str(msg)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
