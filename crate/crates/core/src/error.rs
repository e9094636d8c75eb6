//! Decoder failure signals shared by every code family.

use crate::linalg::SolveError;

/// Why a decoder declined to return a codeword. Decoders never return a word
/// whose distance to the input exceeds their radius; each of these is a
/// detected failure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("erasure system has no solution")]
    NoSolution,
    #[error("erasure system is not uniquely solvable (kernel dimension {0})")]
    NotUnique(usize),
    #[error("residual error has rank {rank}, above the radius {radius}")]
    RankExceeded { rank: usize, radius: usize },
    #[error("radius {requested} exceeds the decoding radius {max}")]
    RadiusExceeded { requested: usize, max: usize },
    #[error("linearized polynomial division is not exact")]
    InexactDivision,
    #[error("received word has shape {found:?}, expected {expected:?}")]
    Shape { expected: (usize, usize), found: (usize, usize) },
    #[error("received word is not a codeword")]
    NotACodeword,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl<E> From<SolveError<E>> for DecodeError {
    fn from(e: SolveError<E>) -> Self {
        match e {
            SolveError::NoSolution => DecodeError::NoSolution,
            SolveError::NotUnique { kernel_dim, .. } => DecodeError::NotUnique(kernel_dim),
        }
    }
}
