use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{what} {value} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },

    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(u32),

    #[error("polynomial index {0} is out of range")]
    BadIndex(i64),

    #[error("S_n is only defined at alpha = ±1, got {0}")]
    BadAlpha(i64),

    #[error("exponent must be positive")]
    ZeroExponent,

    #[error("no closed form for exponent {0}")]
    UnsupportedExponent(u64),

    #[error("malformed element `{0}`: expected four comma-separated residues")]
    BadElement(String),

    #[error("empty word")]
    EmptyWord,

    #[error("specialized and general root solvers disagree for n = {n}: {detail}")]
    SolverDisagreement { n: u64, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
