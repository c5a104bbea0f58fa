//! Exact Koszul calculus of quadratic quiver algebras.

pub mod acceptance;
pub mod algebra;
pub mod bimodule;
pub mod calculus;
pub mod duality;
pub mod error;
pub mod koszul;
pub mod linalg;
pub mod oracle;
pub mod presets;
pub mod quiver;
pub mod random;

pub use algebra::{build_algebra, QuadraticAlgebra, RelationSpace};
pub use bimodule::{BimoduleKind, GradedBimodule};
pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Rational, Scalar, SparseVec, Subspace};
pub use quiver::{Path, PathBasis, Quiver};
