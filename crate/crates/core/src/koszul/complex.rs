use std::collections::HashMap;

use crate::algebra::QuadraticAlgebra;
use crate::error::Result;
use crate::linalg::{homology, rank, Accumulator, Field, Matrix, SparseVec};

use super::wspace::WTower;

/// A quadratic algebra with its spaces `W_p` for `p ≤ T`.
#[derive(Clone, Debug)]
pub struct KoszulAlgebra {
    alg: QuadraticAlgebra,
    tower: WTower,
}

impl KoszulAlgebra {
    pub fn new(alg: QuadraticAlgebra) -> Result<KoszulAlgebra> {
        let tower = WTower::new(&alg, alg.max_weight())?;
        Ok(KoszulAlgebra { alg, tower })
    }

    pub fn algebra(&self) -> &QuadraticAlgebra {
        &self.alg
    }

    pub fn tower(&self) -> &WTower {
        &self.tower
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn max_weight(&self) -> usize {
        self.alg.max_weight()
    }
}

/// Basis element `a ⊗ ω ⊗ b` of `K(A)_p` with `a ∈ A_r`, `ω ∈ W_p`, `b ∈ A_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KTriple {
    pub r: usize,
    pub a: usize,
    pub omega: usize,
    pub b: usize,
}

/// The component of `K(A)_p` in internal weight `w`.
#[derive(Clone, Debug)]
pub struct KSlice {
    pub p: usize,
    pub w: usize,
    basis: Vec<KTriple>,
    index: HashMap<KTriple, usize>,
}

impl KSlice {
    fn new(ka: &KoszulAlgebra, p: usize, w: usize) -> KSlice {
        let (alg, wp) = (&ka.alg, ka.tower.get(p));
        let mut basis = Vec::new();
        if let Some(wp) = wp {
            if p <= w {
                for r in 0..=(w - p) {
                    let s = w - p - r;
                    for a in 0..alg.dim(r) {
                        let (_, ra) = alg.block(r, a);
                        for omega in 0..wp.dim() {
                            let (lo, ro) = wp.block(omega);
                            if lo != ra {
                                continue;
                            }
                            for b in 0..alg.dim(s) {
                                if alg.block(s, b).0 == ro {
                                    basis.push(KTriple { r, a, omega, b });
                                }
                            }
                        }
                    }
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        KSlice { p, w, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[KTriple] {
        &self.basis
    }

    pub fn triple(&self, i: usize) -> KTriple {
        self.basis[i]
    }

    pub fn index_of(&self, t: &KTriple) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Weight of the right factor of a basis triple.
    pub fn s(&self, t: &KTriple) -> usize {
        self.w - self.p - t.r
    }
}

/// The Koszul complex `K(A) = A ⊗ W_• ⊗ A`, weight by weight up to `T`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    /// `slices[w][p]` for `p ≤ w`.
    slices: Vec<Vec<KSlice>>,
}

impl KoszulComplex {
    pub fn new(ka: &KoszulAlgebra) -> KoszulComplex {
        let t = ka.max_weight();
        let slices = (0..=t).map(|w| (0..=w).map(|p| KSlice::new(ka, p, w)).collect()).collect();
        KoszulComplex { slices }
    }

    pub fn max_weight(&self) -> usize {
        self.slices.len() - 1
    }

    /// `K(A)_p` in weight `w`; empty when `p > w`.
    pub fn slice(&self, p: usize, w: usize) -> Option<&KSlice> {
        self.slices.get(w).and_then(|s| s.get(p))
    }

    pub fn dim(&self, p: usize, w: usize) -> usize {
        self.slice(p, w).map_or(0, |s| s.dim())
    }

    /// `d(a ⊗ x_1…x_p ⊗ b) = a x_1 ⊗ x_2…x_p ⊗ b + (−1)^p a ⊗ x_1…x_{p−1} ⊗ x_p b`.
    pub fn d(&self, ka: &KoszulAlgebra, p: usize, w: usize, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        let (Some(src), Some(dst)) = (self.slice(p, w), p.checked_sub(1).and_then(|q| self.slice(q, w))) else {
            return SparseVec::new();
        };
        let (alg, tower) = (&ka.alg, &ka.tower);
        let field = alg.field();
        let sign = field.sign(p);
        for (i, c) in v.iter() {
            let t = src.triple(*i);
            let s = src.s(&t);
            for (x, rest, k) in tower.decompose(1, p - 1, t.omega) {
                let ck = c * k;
                for (a2, y) in alg.multiply_basis(t.r, t.a, 1, *x).iter() {
                    let idx = dst.index_of(&KTriple { r: t.r + 1, a: *a2, omega: *rest, b: t.b }).expect("triple in slice");
                    acc.push(idx, &ck * y);
                }
            }
            for (rest, x, k) in tower.decompose(p - 1, 1, t.omega) {
                let ck = &(c * k) * &sign;
                for (b2, y) in alg.multiply_basis(1, *x, s, t.b).iter() {
                    let idx = dst.index_of(&KTriple { r: t.r, a: t.a, omega: *rest, b: *b2 }).expect("triple in slice");
                    acc.push(idx, &ck * y);
                }
            }
        }
        acc.finish()
    }

    /// Matrix of `d: K(A)_p → K(A)_{p−1}` in weight `w` (zero map for `p = 0`).
    pub fn differential(&self, ka: &KoszulAlgebra, p: usize, w: usize) -> Matrix {
        let field = ka.field();
        let cols = self.dim(p, w);
        let rows = if p == 0 { 0 } else { self.dim(p - 1, w) };
        let columns: Vec<SparseVec> =
            (0..cols).map(|i| self.d(ka, p, w, &SparseVec::unit(i, field))).collect();
        Matrix::from_columns(field, rows, &columns)
    }

    /// The augmentation `K(A)_0 → A`, `a ⊗ e_i ⊗ b ↦ ab`, in weight `w`.
    pub fn augmentation(&self, ka: &KoszulAlgebra, w: usize) -> Matrix {
        let alg = &ka.alg;
        let columns: Vec<SparseVec> = match self.slice(0, w) {
            Some(src) => src
                .basis()
                .iter()
                .map(|t| alg.multiply_basis(t.r, t.a, w - t.r, t.b))
                .collect(),
            None => Vec::new(),
        };
        Matrix::from_columns(alg.field(), alg.dim(w), &columns)
    }
}

/// Homology of the augmented Koszul complex in one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightExactness {
    pub w: usize,
    /// `homology[p]` at `K(A)_p`, for `p ≤ w`.
    pub homology: Vec<usize>,
    /// `dim A_w − rank(augmentation)`.
    pub cokernel: usize,
}

impl WeightExactness {
    pub fn is_exact(&self) -> bool {
        self.cokernel == 0 && self.homology.iter().all(|&h| h == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulnessReport {
    pub max_weight: usize,
    pub weights: Vec<WeightExactness>,
}

impl KoszulnessReport {
    /// Koszul up to the truncation weight.
    pub fn is_koszul(&self) -> bool {
        self.weights.iter().all(|w| w.is_exact())
    }

    /// First weight with nonzero homology, and the degree (`None` for the cokernel).
    pub fn first_failure(&self) -> Option<(usize, Option<usize>)> {
        self.weights.iter().find(|w| !w.is_exact()).map(|w| {
            let p = w.homology.iter().position(|&h| h != 0);
            (w.w, if w.cokernel != 0 && p.is_none() { None } else { p })
        })
    }
}

/// Homology of `… → K(A)_1 → K(A)_0 → A → 0` in each weight `w ≤ T`.
pub fn check_koszulness(ka: &KoszulAlgebra, k: &KoszulComplex) -> Result<KoszulnessReport> {
    let mut weights = Vec::new();
    for w in 0..=k.max_weight() {
        let mut maps: Vec<Matrix> = (0..=w).map(|p| k.differential(ka, p, w)).collect();
        maps[0] = k.augmentation(ka, w);
        let mut hom = Vec::with_capacity(w + 1);
        for p in 0..=w {
            let d_in = if p < w {
                maps[p + 1].clone()
            } else {
                Matrix::zero(ka.field(), k.dim(p, w), 0)
            };
            hom.push(homology(&d_in, &maps[p])?.dim);
        }
        let cokernel = ka.algebra().dim(w) - rank(&maps[0]);
        weights.push(WeightExactness { w, homology: hom, cokernel });
    }
    Ok(KoszulnessReport { max_weight: k.max_weight(), weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::presets;

    const Q: Field = Field::Rational;

    fn ka(q: crate::quiver::Quiver, r: crate::algebra::RelationSpace, t: usize) -> KoszulAlgebra {
        KoszulAlgebra::new(build_algebra(&q, &r, t).unwrap()).unwrap()
    }

    #[test]
    fn d_squared_zero_polynomial() {
        let (q, r) = presets::symmetric(Q, 2);
        let ka = ka(q, r, 5);
        let k = KoszulComplex::new(&ka);
        for w in 0..=5 {
            for p in 2..=w {
                let dd = k.differential(&ka, p - 1, w).mul(&k.differential(&ka, p, w));
                assert!(dd.is_zero(), "p={p} w={w}");
            }
        }
    }

    #[test]
    fn d_in_degree_one() {
        let (q, r) = presets::symmetric(Q, 2);
        let ka = ka(q, r, 3);
        let k = KoszulComplex::new(&ka);
        let s = k.slice(1, 1).unwrap();
        let i = s.index_of(&KTriple { r: 0, a: 0, omega: 0, b: 0 }).unwrap();
        let got = k.d(&ka, 1, 1, &SparseVec::unit(i, Q));
        let dst = k.slice(0, 1).unwrap();
        let xl = dst.index_of(&KTriple { r: 1, a: 0, omega: 0, b: 0 }).unwrap();
        let xr = dst.index_of(&KTriple { r: 0, a: 0, omega: 0, b: 0 }).unwrap();
        assert_eq!(got, SparseVec::from_unsorted(vec![(xl, Q.one()), (xr, Q.from_int(-1))]));
    }

    #[test]
    fn polynomial_slice_dims() {
        let (q, r) = presets::symmetric(Q, 2);
        let ka = ka(q, r, 3);
        let k = KoszulComplex::new(&ka);
        // weight 2: p=0 → Σ dimA_r dimA_s (r+s=2) = 3+4+3; p=1 → 2·(2+2); p=2 → 1
        assert_eq!((k.dim(0, 2), k.dim(1, 2), k.dim(2, 2)), (10, 8, 1));
    }

    #[test]
    fn koszulness_verdicts() {
        let (q, r) = presets::symmetric(Q, 2);
        let ka1 = ka(q, r, 5);
        assert!(check_koszulness(&ka1, &KoszulComplex::new(&ka1)).unwrap().is_koszul());
        let (q, r) = presets::free(Q, 2);
        let ka2 = ka(q, r, 4);
        assert!(check_koszulness(&ka2, &KoszulComplex::new(&ka2)).unwrap().is_koszul());
    }
}
