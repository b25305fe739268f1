use thiserror::Error;

/// Result type used throughout this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors from pmf evaluation, finite differences, and threshold solving.
#[derive(Debug, Error)]
pub enum Error {
    #[error("order k must be at least {min}, got {got}")]
    OrderTooSmall { got: u32, min: u32 },

    #[error("lambda must be finite and non-negative, got {0}")]
    InvalidLambda(f64),

    #[error("lambda must be strictly positive, got {0}")]
    NonPositiveLambda(f64),

    #[error("tolerance must be finite and strictly positive, got {0}")]
    InvalidTolerance(f64),

    #[error("brute-force enumeration exceeds the budget of {budget} tuples")]
    EnumerationBudget { budget: u64 },

    #[error("truncated sum has not converged after N={cap} terms (defect {defect:e})")]
    TruncationCap { cap: u32, defect: f64 },

    #[error("difference order m={m} exceeds index n={n}")]
    OrderExceedsIndex { m: u32, n: u32 },

    #[error("pmf table of length {len} does not cover index n={n}")]
    TableTooShort { n: u32, len: usize },

    #[error("(m={m}, n={n}) lies outside the closed-form window 1<=m<=k-1, m+1<=n<=k for k={k}")]
    OutsideValidityWindow { m: u32, n: u32, k: u32 },

    #[error("n={n} lies outside the block [k+2, 2k] for k={k}")]
    OutsideBlock { n: u32, k: u32 },

    #[error("cap {cap} is too small; need at least 2k = {min}")]
    CapTooSmall { cap: u32, min: u32 },

    #[error("cap multiplier must be at least 4, got {0}")]
    CapMultTooSmall(u32),

    #[error("no sign change over [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("root not bracketed to tolerance after {limit} iterations")]
    MaxIterations { limit: u32 },

    #[error("could not bracket the root of p_(k+2) - p_(k+1) for k={k}")]
    BracketFailure { k: u32 },

    #[error("grid must have at least {min} points, got {got}")]
    GridTooSmall { got: u32, min: u32 },

    #[error("invalid k range [{k_min}, {k_max}]; need 2 <= k_min <= k_max")]
    InvalidRange { k_min: u32, k_max: u32 },

    #[error("solver failed at k={k}: {source}")]
    SolveAt {
        k: u32,
        #[source]
        source: Box<Error>,
    },

    #[error("degenerate fit input: {0}")]
    DegenerateFit(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by invalid arguments rather than by a
    /// numerical procedure failing at runtime.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::OrderTooSmall { .. }
                | Error::InvalidLambda(_)
                | Error::NonPositiveLambda(_)
                | Error::InvalidTolerance(_)
                | Error::OrderExceedsIndex { .. }
                | Error::TableTooShort { .. }
                | Error::OutsideValidityWindow { .. }
                | Error::OutsideBlock { .. }
                | Error::CapTooSmall { .. }
                | Error::CapMultTooSmall(_)
                | Error::GridTooSmall { .. }
                | Error::InvalidRange { .. }
                | Error::DegenerateFit(_)
        )
    }
}
