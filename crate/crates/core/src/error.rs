use thiserror::Error;

/// Failures raised by the exact-arithmetic kernels.
///
/// Several of these are not programming errors but identity-check failures:
/// a `NonDivisible` from an identity that should divide exactly means the
/// identity does not hold at the computed order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: {0}")]
    NonDivisible(String),
    #[error("leading coefficient is not a unit: {0}")]
    NonUnitLeading(String),
    #[error("constant term must vanish for D^-1")]
    NonzeroConstantTerm,
    #[error("bad valuation: {0}")]
    BadValuation(String),
    #[error("coefficient q^{exponent} outside computed range (known below q^{bound})")]
    OutOfRange { exponent: i64, bound: i64 },
    #[error("operation needs a finite truncation order")]
    Unbounded,
    #[error("substitution target must be a monomial")]
    NonMonomial,
    #[error("Laurent polynomial is not invariant under t -> 1/t")]
    NotSymmetric,
    #[error("degree {degree} exceeds the allowed {allowed}")]
    DegreeOverflow { degree: i64, allowed: i64 },
    #[error("t-series is not polynomial: nonzero coefficient at t^{exponent}")]
    NotPolynomial { exponent: i64 },
    #[error("t-series known only below t^{known}, window needs t^{needed}")]
    InsufficientPrecision { known: i64, needed: i64 },
    #[error("denominator does not clear: {0}")]
    DenominatorNotCleared(String),
    #[error("fractional prefactor does not cancel: {0}")]
    PrefactorImbalance(String),
    #[error("identity fails: {0}")]
    IdentityFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
