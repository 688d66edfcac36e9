use thiserror::Error;

/// Errors produced by the series engine and the verification layers built on it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("coefficient ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("coefficient of exponent {exponent} requested but the series is only known below {trunc}")]
    BeyondTruncation { exponent: i64, trunc: i64 },

    #[error("leading coefficient is not a unit")]
    NotAUnit,

    #[error("exp requires a series with vanishing constant term and no negative exponents")]
    ExpPrecondition,

    #[error("log requires a series of the form 1 + (positive exponents)")]
    LogPrecondition,

    #[error("outer variable mismatch: {0:?} vs {1:?}")]
    VariableMismatch(crate::bivariate::OuterVar, crate::bivariate::OuterVar),

    #[error("torsion point must be nonzero")]
    ZeroPoint,

    #[error("divisor is empty")]
    EmptyDivisor,

    #[error("chosen lifts do not cancel: sum of a_x * x = ({alpha})tau + ({beta})")]
    LiftsDoNotCancel { alpha: String, beta: String },

    #[error("root of unity e^(2 pi i {num}/{den}) is not available in this coefficient ring")]
    RootUnavailable { num: i64, den: u64 },

    #[error("conductor {0} exceeds the exact cyclotomic limit")]
    ConductorTooLarge(u64),

    #[error("Im(tau) = {0} is outside the supported range")]
    BadTau(f64),

    #[error("partition is empty")]
    EmptyPartition,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
