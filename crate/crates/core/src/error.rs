use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("empty generator list")]
    EmptyGeneratorList,
    #[error("no full-rank submatrix")]
    NoFullRankSubmatrix,
    #[error("input is not a monomial: {0}")]
    NotMonomial(String),
    #[error("rank could not be certified after {0} evaluations")]
    RankUncertified(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
