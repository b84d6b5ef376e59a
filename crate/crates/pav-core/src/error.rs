use num_bigint::BigInt;
use thiserror::Error;

/// Errors shared by the exact, symplectic, classification and Siegel layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("cokernel order {order} exceeds the enumeration cap {limit}")]
    OrderTooLarge { order: BigInt, limit: u64 },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("divisor chains have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("invalid divisor chain: {0}")]
    InvalidChain(String),
    #[error("alternating form is degenerate")]
    Degenerate,
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("matrix is not symplectic for the given polarization type")]
    NotSymplectic,
    #[error("inadmissible divisor: {0}")]
    BadDivisor(String),
    #[error("matrix is not 2x2")]
    NotTwoByTwo,
    #[error("dimension clash: {0}")]
    DimensionClash(String),
    #[error("matrix has non-integral entries")]
    NotIntegral,
    #[error("restricted form is degenerate; input is not a rational representation of a morphism of polarized tori")]
    DegenerateRestriction,
    #[error("not a valid Siegel point")]
    InvalidSiegelPoint,
    #[error("block is numerically singular (condition estimate {0:.3e})")]
    NearSingularBlock(f64),
    #[error("type data failed validation: {0}")]
    InvalidType(String),
}

pub type Result<T> = std::result::Result<T, Error>;
