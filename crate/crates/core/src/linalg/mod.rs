//! Exact scalars, sparse vectors and matrices, and subspace arithmetic.

mod echelon;
mod homology;
mod rational;
mod scalar;
mod sparse;

pub use echelon::{
    coordinates, intersect, intersect_pairwise, kernel_basis, rank, rref, rref_with, EchelonOptions, Rref, Subspace,
};
pub use homology::{homology, homology_unchecked, Homology};
pub use rational::Rational;
pub use scalar::{is_prime, Field, Scalar};
pub use sparse::{Accumulator, Matrix, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("subspaces live in different ambient spaces ({expected} vs {found})")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("intersection of an empty list of subspaces")]
    EmptyIntersection,
    #[error("d_out * d_in is not zero")]
    CompositionNotZero,
    #[error("{context}: incompatible shapes ({left} vs {right})")]
    ShapeMismatch { context: &'static str, left: usize, right: usize },
}
