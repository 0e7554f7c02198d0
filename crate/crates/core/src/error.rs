//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `I(x, x)` is undefined; `δ(x, x) = 0` is handled by callers.
    #[error("the two points are equal; the smallest common interval is undefined")]
    EqualPoints,

    /// A point, position, or scale left the configured machine-word range.
    #[error("dyadic arithmetic overflow: {0}")]
    Overflow(&'static str),

    /// Malformed textual representation of a dyadic point.
    #[error("cannot parse dyadic point {0:?}: expected \"n/2^q\" with n, q nonnegative integers")]
    ParsePoint(String),

    /// A synthesis window that does not cover the expansion's support.
    #[error("window [0, 2^{window}) does not contain the support interval at level {level}, position {position}")]
    WindowTooSmall { window: i32, level: i32, position: u64 },

    /// A synthesis grid coarser than the finest wavelet in the expansion.
    #[error("grid level {grid} cannot resolve a coefficient at level {level}; need grid >= level + 1")]
    GridTooCoarse { grid: i32, level: i32 },

    /// Step-function parsing failed.
    #[error("cannot parse step function: {0}")]
    ParseStep(String),

    /// The pairing requires supports at positive dyadic distance.
    #[error("supports are not separated: both functions are nonzero on the cell at level {level}, position {position}")]
    SupportsNotSeparated { level: i32, position: u64 },

    /// Fractional order outside the open interval (0, 1).
    #[error("fractional order s = {0} is outside the open interval (0, 1)")]
    InvalidOrder(f64),

    /// An Lp exponent outside the theorem's range.
    #[error("exponent p = {0} is outside the admissible range (1, inf)")]
    InvalidP(f64),

    /// Degenerate trial counts are rejected.
    #[error("at least one trial is required")]
    InvalidTrials,

    /// Empty or otherwise unusable sweep configuration.
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(&'static str),

    /// Unknown verification suite id.
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
