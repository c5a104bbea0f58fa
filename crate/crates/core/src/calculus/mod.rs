//! Koszul cochains and chains, their differentials, cup and cap products.
//!
//! A `p`-cochain of coefficient weight `w` is a block-respecting map
//! `W_p → M_w`; a `p`-chain of coefficient weight `w` is an element of
//! `M_w ⊗_{k^e} W_p`. Both are stored as one value in `M_w` per basis vector
//! of `W_p`.

mod hk;
mod ops;

pub use hk::{
    class_product, higher_hk, hk, hk_slice, ClassOp, Direction, HigherSlice, HigherTable, HkSlice, HkTable,
};
pub use ops::{
    b_hom, b_hom_matrix, b_k, b_k_matrix, cap_left, cap_on_k_left, cap_on_k_right, cap_right, cup, fundamental_cocycle,
    product, unit_cochain, zero_cochain,
};

use std::collections::HashMap;

use rand::Rng;

use crate::bimodule::GradedBimodule;
use crate::koszul::KoszulAlgebra;
use crate::linalg::{Accumulator, SparseVec};

/// Element of `Hom_{k^e}(W_p, M_w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub p: usize,
    pub w: usize,
    /// `values[a]` is the image of basis vector `a` of `W_p`.
    pub values: Vec<SparseVec>,
}

/// Element `Σ_a values[a] ⊗ w_a` of `M_w ⊗_{k^e} W_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub p: usize,
    pub w: usize,
    pub values: Vec<SparseVec>,
}

impl Cochain {
    pub fn zero(ka: &KoszulAlgebra, p: usize, w: usize) -> Cochain {
        Cochain { p, w, values: vec![SparseVec::new(); ka.tower().w(p).dim()] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Total degree `w − p`.
    pub fn total_degree(&self) -> i64 {
        self.w as i64 - self.p as i64
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.p, self.w), (other.p, other.w), "bidegree mismatch");
        Cochain { p: self.p, w: self.w, values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &crate::linalg::Scalar) -> Cochain {
        Cochain { p: self.p, w: self.w, values: self.values.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn neg(&self) -> Cochain {
        Cochain { p: self.p, w: self.w, values: self.values.iter().map(|v| v.neg()).collect() }
    }
}

impl Chain {
    pub fn zero(ka: &KoszulAlgebra, p: usize, w: usize) -> Chain {
        Chain { p, w, values: vec![SparseVec::new(); ka.tower().w(p).dim()] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Total degree `w + p`.
    pub fn total_degree(&self) -> i64 {
        self.w as i64 + self.p as i64
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!((self.p, self.w), (other.p, other.w), "bidegree mismatch");
        Chain { p: self.p, w: self.w, values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &crate::linalg::Scalar) -> Chain {
        Chain { p: self.p, w: self.w, values: self.values.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn neg(&self) -> Chain {
        Chain { p: self.p, w: self.w, values: self.values.iter().map(|v| v.neg()).collect() }
    }
}

/// Flat basis of a cochain or chain space: pairs `(a, m)` of a `W_p` basis
/// vector and an `M_w` basis element with compatible blocks.
#[derive(Clone, Debug)]
pub struct PairBasis {
    pub p: usize,
    pub w: usize,
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl PairBasis {
    /// Basis of `Hom_{k^e}(W_p, M_w)`: `block(m) = block(w_a)`.
    pub fn cochains(ka: &KoszulAlgebra, m: &GradedBimodule, p: usize, w: usize) -> PairBasis {
        Self::build(ka, m, p, w, |wb, mb| wb == mb)
    }

    /// Basis of `M_w ⊗_{k^e} W_p`: `block(m) = (right(w_a), left(w_a))`.
    pub fn chains(ka: &KoszulAlgebra, m: &GradedBimodule, p: usize, w: usize) -> PairBasis {
        Self::build(ka, m, p, w, |wb, mb| mb == (wb.1, wb.0))
    }

    fn build(
        ka: &KoszulAlgebra,
        m: &GradedBimodule,
        p: usize,
        w: usize,
        ok: impl Fn((usize, usize), (usize, usize)) -> bool,
    ) -> PairBasis {
        let mut pairs = Vec::new();
        if let Some(wp) = ka.tower().get(p) {
            for a in 0..wp.dim() {
                for (k, &mb) in m.blocks(w).iter().enumerate() {
                    if ok(wp.block(a), mb) {
                        pairs.push((a, k));
                    }
                }
            }
        }
        let index = pairs.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
        PairBasis { p, w, pairs, index }
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index_of(&self, a: usize, m: usize) -> Option<usize> {
        self.index.get(&(a, m)).copied()
    }

    /// Flattens per-`ω` values into coordinates; entries outside the basis
    /// (block violations) are reported as `None`.
    pub fn flatten(&self, values: &[SparseVec]) -> Option<SparseVec> {
        let mut acc = Accumulator::new();
        for (a, v) in values.iter().enumerate() {
            for (k, c) in v.iter() {
                acc.push(self.index_of(a, *k)?, c.clone());
            }
        }
        Some(acc.finish())
    }

    /// Inverse of [`PairBasis::flatten`], for `n_omega` basis vectors of `W_p`.
    pub fn unflatten(&self, v: &SparseVec, n_omega: usize) -> Vec<SparseVec> {
        let mut per: Vec<Vec<(usize, crate::linalg::Scalar)>> = vec![Vec::new(); n_omega];
        for (i, c) in v.iter() {
            let (a, k) = self.pairs[*i];
            per[a].push((k, c.clone()));
        }
        per.into_iter().map(SparseVec::from_unsorted).collect()
    }

    pub fn cochain(&self, ka: &KoszulAlgebra, v: &SparseVec) -> Cochain {
        Cochain { p: self.p, w: self.w, values: self.unflatten(v, ka.tower().w(self.p).dim()) }
    }

    pub fn chain(&self, ka: &KoszulAlgebra, v: &SparseVec) -> Chain {
        Chain { p: self.p, w: self.w, values: self.unflatten(v, ka.tower().w(self.p).dim()) }
    }

    /// A random element with small integer coordinates.
    pub fn random(&self, ka: &KoszulAlgebra, rng: &mut impl Rng) -> SparseVec {
        let f = ka.field();
        let entries = (0..self.dim())
            .filter_map(|i| {
                let c: i64 = rng.gen_range(-3..=3);
                (c != 0).then(|| (i, f.from_int(c)))
            })
            .collect();
        SparseVec::from_unsorted(entries)
    }
}

/// A random cochain of bidegree `(p, w)`.
pub fn random_cochain(ka: &KoszulAlgebra, m: &GradedBimodule, p: usize, w: usize, rng: &mut impl Rng) -> Cochain {
    let basis = PairBasis::cochains(ka, m, p, w);
    let v = basis.random(ka, rng);
    basis.cochain(ka, &v)
}

/// A random chain of bidegree `(p, w)`.
pub fn random_chain(ka: &KoszulAlgebra, m: &GradedBimodule, p: usize, w: usize, rng: &mut impl Rng) -> Chain {
    let basis = PairBasis::chains(ka, m, p, w);
    let v = basis.random(ka, rng);
    basis.chain(ka, &v)
}

/// A random element of `K(A)_p` in internal weight `w`.
pub fn random_k_element(k: &crate::koszul::KoszulComplex, ka: &KoszulAlgebra, p: usize, w: usize, rng: &mut impl Rng) -> SparseVec {
    let dim = k.dim(p, w);
    let f = ka.field();
    SparseVec::from_unsorted(
        (0..dim)
            .filter_map(|i| {
                let c: i64 = rng.gen_range(-3..=3);
                (c != 0).then(|| (i, f.from_int(c)))
            })
            .collect(),
    )
}
