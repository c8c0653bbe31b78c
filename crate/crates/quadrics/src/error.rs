use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("zero polynomial not allowed")]
    ZeroPolynomial,
    #[error("polynomial degree {0} exceeds the cap of {1}")]
    DegreeCap(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dependent basis: rank error")]
    Rank,
    #[error("enumeration budget exceeded: needed {needed} field operations, budget {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("generator gave up after {0} consecutive rejections")]
    Generator(u64),
    #[error("bad reduction at p = {0}: {1}")]
    BadReduction(u64, String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
