use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u32),

    #[error("reduction exceeded the budget of {fuel} rewrite steps")]
    FuelExhausted { fuel: u64 },

    #[error("basis enumeration requires the standard grading (|P^k| = (2k(p-1), 1), |b| = (1, 0))")]
    InvalidGrading,

    #[error("grading is symbolic (parities only); bidegrees are undefined")]
    SymbolicGrading,

    #[error("scheme `{0}` does not carry a concrete grading")]
    UnsupportedScheme(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A syntax error in the surface expression language.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: expected {}", expected.join(" or "))]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<&'static str>,
}

pub type Result<T> = std::result::Result<T, Error>;
