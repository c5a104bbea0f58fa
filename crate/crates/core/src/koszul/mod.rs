//! The spaces `W_p`, the Koszul complex `K(A)` and the Koszulness check.

mod complex;
mod wspace;

pub use complex::{check_koszulness, KSlice, KTriple, KoszulAlgebra, KoszulComplex, KoszulnessReport, WeightExactness};
pub use wspace::{antisymmetric_basis, antisymmetrize, compute_w, permutations, subsets, DecompTerm, WSpace, WTower};
