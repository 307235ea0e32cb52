use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("signature mismatch: Cl({0},{1}) vs Cl({2},{3})")]
    SignatureMismatch(u8, u8, u8, u8),
    #[error("unsupported signature Cl({0},{1}): p + q must be at most 4")]
    UnsupportedSignature(u8, u8),
    #[error("grade {grade} out of range 0..={max}")]
    GradeOutOfRange { grade: usize, max: usize },
    #[error("multivector has support outside the target subalgebra")]
    NotInSubalgebra,
    #[error("sample {index} is not volume-time valued")]
    NotVolumeTime { index: usize },
    #[error("fast path needs power-of-two dimensions, got {0:?}; use the direct path")]
    UnsupportedSize(alloc::vec::Vec<usize>),
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch(alloc::vec::Vec<usize>, alloc::vec::Vec<usize>),
    #[error("linear map is singular")]
    Singular,
    #[error("zero vector where a nonzero direction is required")]
    ZeroVector,
    #[error("invalid quadrature spec: {0}")]
    InvalidQuadrature(&'static str),
    #[error("map is not a lattice automorphism of the grid: {0}")]
    UnsupportedMap(&'static str),
}
