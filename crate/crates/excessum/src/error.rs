use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A series operation needs a zero constant term (exp) and got something else.
    #[error("series operation requires a zero constant term, found {0}")]
    NonzeroConstantTerm(String),

    /// series_log needs constant term 1.
    #[error("series logarithm requires constant term 1, found {0}")]
    ConstantTermNotOne(String),

    /// Antiderivative of an x^-1 term is a logarithm, not a Laurent polynomial.
    #[error("antiderivative would require a log term (x^-1 coefficient {0})")]
    LogTermRequired(String),

    /// Uniformity must satisfy b >= 2.
    #[error("uniformity must be at least 2, got {0}")]
    BadUniformity(usize),

    /// Sizes that violate the excess/size congruences (n, s, k, ell).
    #[error("incompatible sizes: {0}")]
    IncompatibleSize(String),

    /// Brute-force enumeration refused: too many potential edges.
    #[error("enumeration cap exceeded: C({n},{b}) = {edges} potential edges > cap {cap}")]
    CapExceeded {
        n: usize,
        b: usize,
        edges: u64,
        cap: u64,
    },

    /// A forest code that does not describe a forest.
    #[error("invalid forest code: {0}")]
    InvalidCode(String),

    /// Input that is not a forest of rooted hypertrees.
    #[error("not a rooted hypertree forest: {0}")]
    NotAForest(String),

    /// Bad CLI flags or JSON payloads.
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
