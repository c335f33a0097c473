//! Error type shared across the library; the CLI maps variants onto exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input: unknown variables, mismatched
    /// contexts, out-of-range indices, bad flag combinations.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An instance document could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A requested monomial count is infinite: some generator times an
    /// unbounded variable power never lands in the excluded region.
    #[error("non-artinian piece: {0}")]
    NonArtinian(String),

    /// A localized module has infinite length over its local ring.
    #[error("infinite length: {0}")]
    InfiniteLength(String),

    /// Minimal primes of the unit ideal were requested.
    #[error("empty spectrum: the unit ideal has no minimal primes")]
    EmptySpectrum,

    /// The product of the scaling ideals acts nilpotently on the module, so
    /// the multidegree data collapses. Requires I_1*...*I_d not contained in
    /// the radical of the annihilator.
    #[error("degenerate system: {0}")]
    Degenerate(String),

    /// Sampled lengths never settled onto a polynomial at any offset up to
    /// the configured cap.
    #[error("non-stabilized: Hilbert samples did not settle onto a polynomial at any offset up to {cap}")]
    NonStabilized { cap: u64 },

    /// Exponents or degree bounds exceed what the enumeration engine will
    /// attempt. Exact arithmetic never overflows, but compute budgets do.
    #[error("instance too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
