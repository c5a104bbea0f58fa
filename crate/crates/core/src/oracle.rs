//! Independent reference computations used by tests and the acceptance suite.
//!
//! Nothing here shares code with the sparse elimination or the `W_p`
//! recursion, so agreement is meaningful.

use crate::algebra::QuadraticAlgebra;
use crate::linalg::{intersect_pairwise, Scalar, SparseVec, Subspace};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomials of degree `w` in `n` commuting variables, by enumeration.
pub fn monomials(n: usize, w: usize) -> usize {
    fn go(vars: usize, left: usize) -> usize {
        match vars {
            0 => usize::from(left == 0),
            _ => (0..=left).map(|e| go(vars - 1, left - e)).sum(),
        }
    }
    go(n, w)
}

/// Rank by plain dense Gaussian elimination.
pub fn dense_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].inv();
        let pivot_row: Vec<Scalar> = m[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for c in col..ncols {
                    let delta = &factor * &pivot_row[c];
                    row[c] -= &delta;
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// `dim ker(d_out) − rank(d_in)` with both maps given as dense row lists.
pub fn dense_homology_dim(dim: usize, d_in: &[Vec<Scalar>], d_out: &[Vec<Scalar>]) -> usize {
    dim - dense_rank(d_out) - dense_rank(d_in)
}

/// `W_p` as a left fold of pairwise intersections of the placements
/// `V^{⊗i} ⊗ R ⊗ V^{⊗j}`, built directly from path concatenation.
pub fn w_by_placements(a: &QuadraticAlgebra, p: usize) -> Subspace {
    let field = a.field();
    let paths = a.paths();
    let ambient = paths.space(p).dim();
    if p < 2 {
        return Subspace::full(field, ambient);
    }
    let relations = a.relations().space().basis().to_vec();
    let mut placements = Vec::new();
    for i in 0..=p - 2 {
        let j = p - 2 - i;
        let mut span = Vec::new();
        for u in 0..paths.space(i).dim() {
            for v in 0..paths.space(j).dim() {
                for r in &relations {
                    let mut entries = Vec::new();
                    for (k, c) in r.iter() {
                        let Some(ur) = paths.concat(i, u, 2, *k) else { continue };
                        if let Some(urv) = paths.concat(i + 2, ur, j, v) {
                            entries.push((urv, c.clone()));
                        }
                    }
                    let vec = SparseVec::from_unsorted(entries);
                    if !vec.is_zero() {
                        span.push(vec);
                    }
                }
            }
        }
        placements.push(Subspace::span(field, ambient, &span));
    }
    intersect_pairwise(&placements).expect("placements share an ambient space")
}
