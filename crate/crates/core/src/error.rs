use thiserror::Error;

/// Errors raised by precondition violations and internal invariant breaches.
///
/// Everything except [`Error::Internal`] is a caller-side precondition
/// failure; `Internal` signals that two independent computation routes
/// disagreed and the result cannot be trusted.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("h must be a positive integer")]
    ZeroHeight,
    #[error("cannot raise the zero magnitude to a non-positive power")]
    ZeroToNonPositivePower,
    #[error("binomial index out of range: k={k} > n={n}")]
    BinomialRange { n: u64, k: u64 },
    #[error("polynomial has no terms")]
    EmptyPolynomial,
    #[error("polynomial has duplicate term index {0}")]
    DuplicateTermIndex(u64),
    #[error("polynomial has no nonzero coefficient")]
    AllCoefficientsZero,
    #[error("center magnitude must be nonzero")]
    ZeroCenter,
    #[error(
        "radius exceeds center magnitude: log radius {radius_log} > log |center| {center_log}"
    )]
    RadiusExceedsCenter {
        radius_log: String,
        center_log: String,
    },
    #[error("count overflows a u64")]
    CountOverflow,
    #[error("p^h = {p}^{h} is too large for the term-by-term expansion")]
    DegreeTooLarge { p: u64, h: u32 },
    #[error("interval is empty")]
    EmptyInterval,
    #[error("interval has empty interior")]
    NoInterior,
    #[error("annulus centered at 1 must have skeleton inside (-inf, 0)")]
    UnitCenterRadiusBound,
    #[error("transported point leaves the tube: log radius > retraction coordinate")]
    TransportOutOfTube,
    #[error("pin must lie strictly inside the skeleton")]
    PinNotInterior,
    #[error("point lies outside the annulus")]
    PointOutsideAnnulus,
    #[error("subinterval is not contained in the skeleton")]
    SubIntervalNotContained,
    #[error("delta must be positive and [t0-delta, t0+delta] must lie in the skeleton interior")]
    DeltaTooLarge,
    #[error("epsilon must satisfy 0 < epsilon <= delta with both circles inside the skeleton")]
    EpsilonOutOfRange,
    #[error("refutation needs at least two truncation values")]
    NeedTwoTruncations,
    #[error("truncation list must be strictly increasing")]
    TruncationsNotIncreasing,
    #[error("truncation {n} is below n0={n0}; the anchor torsor does not exist yet")]
    TruncationBelowAnchor { n: u64, n0: u64 },
    #[error("malformed rational literal: {0:?}")]
    BadRational(String),
    #[error("malformed {what}: {detail}")]
    BadFormat { what: &'static str, detail: String },
    #[error("internal invariant breach: {0}")]
    Internal(String),
}
