//! Error type shared by all modules of the crate.

use std::fmt;

/// Errors produced by polynomial construction, numeric evaluation and the
/// scan/certificate pipelines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The operation is undefined for the zero polynomial.
    ZeroPolynomial,
    /// The constant term is zero where a nonzero one is required; strip
    /// roots at the origin first.
    ConstantTermZero,
    /// The endpoint product `a_0 * a_n` is not positive; apply
    /// `normalize_signs` before calling this operation.
    NotNormalized,
    /// The polynomial does not satisfy the hypotheses of the lower-bound
    /// theorem (no discrepancy index, or `2k > n`).
    NotApplicable(String),
    /// An argument violates a documented precondition; the message names
    /// the failed condition.
    InvalidParameter(String),
    /// The input string is not a valid polynomial in dense or monomial form.
    Parse(String),
    /// The requested tolerance could not be certified within the configured
    /// maximum working precision.
    PrecisionExhausted { requested_bits: u32, max_bits: u32 },
    /// Exact root-squaring grew the coefficients past the memory budget.
    CoefficientBlowup { bits: u64, limit: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => write!(f, "operation undefined for the zero polynomial"),
            Error::ConstantTermZero => {
                write!(f, "constant term is zero; strip roots at the origin first")
            }
            Error::NotNormalized => write!(
                f,
                "endpoint product a_0*a_n must be positive; apply normalize_signs first"
            ),
            Error::NotApplicable(msg) => write!(f, "theorem not applicable: {msg}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Parse(msg) => write!(f, "cannot parse polynomial: {msg}"),
            Error::PrecisionExhausted {
                requested_bits,
                max_bits,
            } => write!(
                f,
                "tolerance for {requested_bits}-bit request unreachable at max working precision {max_bits}"
            ),
            Error::CoefficientBlowup { bits, limit } => write!(
                f,
                "coefficients grew to {bits} bits, past the {limit}-bit budget"
            ),
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
