use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not invertible over Z_{modulus} (determinant {det})")]
    NotAUnit { det: u64, modulus: u64 },
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("bad symmetry witness: {0}")]
    BadWitness(String),
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error("unsupported family for this oracle: {0}")]
    UnsupportedFamily(String),
    #[error("group Z_{modulus}^{dim} is too large to enumerate")]
    TooLarge { modulus: u64, dim: usize },
    #[error("table is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
