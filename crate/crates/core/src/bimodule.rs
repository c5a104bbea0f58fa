//! Weight-graded `A`-bimodules: `A` itself, `A^e`, and finite quotients
//! `A / A_{>s}`.

use crate::algebra::{format_combination, QuadraticAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Accumulator, Field, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimoduleKind {
    /// `A` with left and right multiplication.
    Algebra,
    /// `A^e = A ⊗ A^op` with the outer actions `a (α ⊗ β) b = aα ⊗ βb`.
    Enveloping,
    /// `A / A_{>top}`, an `A`-bimodule concentrated in weights `0..=top`.
    Quotient { top: usize },
}

/// Basis of `(A^e)_w = ⊕_{r+s=w} A_r ⊗ A_s`, ordered by `r`, then the two
/// factor indices.
#[derive(Clone, Debug)]
struct PairIndex {
    /// `offsets[w][r]` is the first index of the `A_r ⊗ A_{w-r}` summand.
    offsets: Vec<Vec<usize>>,
    pairs: Vec<Vec<(usize, usize, usize)>>,
}

#[derive(Clone, Debug)]
pub struct GradedBimodule {
    name: String,
    kind: BimoduleKind,
    field: Field,
    max_weight: usize,
    truncated: bool,
    blocks: Vec<Vec<(usize, usize)>>,
    /// `left[w][a][i]`: arrow `a` times basis element `i` of `M_w`.
    left: Vec<Vec<Vec<SparseVec>>>,
    right: Vec<Vec<Vec<SparseVec>>>,
    pairs: Option<PairIndex>,
}

impl GradedBimodule {
    /// `A` as a bimodule over itself, weights `0..=T`.
    pub fn algebra(a: &QuadraticAlgebra) -> GradedBimodule {
        let t = a.max_weight();
        let blocks = (0..=t).map(|w| (0..a.dim(w)).map(|i| a.block(w, i)).collect()).collect();
        let table = |left: bool| {
            (0..t)
                .map(|w| {
                    (0..a.num_arrows())
                        .map(|x| {
                            (0..a.dim(w))
                                .map(|i| if left { a.multiply_basis(1, x, w, i) } else { a.multiply_basis(w, i, 1, x) })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        };
        GradedBimodule {
            name: "A".into(),
            kind: BimoduleKind::Algebra,
            field: a.field(),
            max_weight: t,
            truncated: true,
            blocks,
            left: table(true),
            right: table(false),
            pairs: None,
        }
    }

    /// `A / A_{>top}`; its actions are exact, not truncated.
    pub fn quotient(a: &QuadraticAlgebra, top: usize) -> Result<GradedBimodule> {
        if top > a.max_weight() {
            return Err(Error::TruncationExceeded { requested: top, max: a.max_weight() });
        }
        let mut m = GradedBimodule::algebra(a);
        m.name = format!("A/A>{top}");
        m.kind = BimoduleKind::Quotient { top };
        m.max_weight = top;
        m.truncated = false;
        m.blocks.truncate(top + 1);
        m.left.truncate(top);
        m.right.truncate(top);
        Ok(m)
    }

    /// `A^e` with its outer bimodule structure, weights `0..=T`.
    pub fn enveloping(a: &QuadraticAlgebra) -> GradedBimodule {
        let t = a.max_weight();
        let mut offsets = Vec::with_capacity(t + 1);
        let mut pairs = Vec::with_capacity(t + 1);
        for w in 0..=t {
            let mut off = Vec::with_capacity(w + 1);
            let mut list = Vec::new();
            for r in 0..=w {
                off.push(list.len());
                for i in 0..a.dim(r) {
                    for j in 0..a.dim(w - r) {
                        list.push((r, i, j));
                    }
                }
            }
            offsets.push(off);
            pairs.push(list);
        }
        let index = PairIndex { offsets, pairs };
        let blocks = (0..=t)
            .map(|w| {
                index.pairs[w].iter().map(|&(r, i, j)| (a.block(r, i).0, a.block(w - r, j).1)).collect()
            })
            .collect();
        let left = (0..t)
            .map(|w| {
                (0..a.num_arrows())
                    .map(|x| {
                        index.pairs[w]
                            .iter()
                            .map(|&(r, i, j)| {
                                let s = w - r;
                                a.multiply_basis(1, x, r, i).reindex(|k| Some(index.index(r + 1, k, s, j, a)))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let right = (0..t)
            .map(|w| {
                (0..a.num_arrows())
                    .map(|x| {
                        index.pairs[w]
                            .iter()
                            .map(|&(r, i, j)| {
                                let s = w - r;
                                a.multiply_basis(s, j, 1, x).reindex(|k| Some(index.index(r, i, s + 1, k, a)))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GradedBimodule {
            name: "A^e".into(),
            kind: BimoduleKind::Enveloping,
            field: a.field(),
            max_weight: t,
            truncated: true,
            blocks,
            left,
            right,
            pairs: Some(index),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &BimoduleKind {
        &self.kind
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// Whether weights above `max_weight` exist but were cut off.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn dim(&self, w: usize) -> usize {
        self.blocks.get(w).map_or(0, |b| b.len())
    }

    pub fn block(&self, w: usize, i: usize) -> (usize, usize) {
        self.blocks[w][i]
    }

    pub fn blocks(&self, w: usize) -> &[(usize, usize)] {
        self.blocks.get(w).map_or(&[], |b| b.as_slice())
    }

    fn out_of_range(&self, w: usize) -> Result<bool> {
        if w <= self.max_weight {
            Ok(false)
        } else if self.truncated {
            Err(Error::TruncationExceeded { requested: w, max: self.max_weight })
        } else {
            Ok(true)
        }
    }

    fn apply_table(table: &[Vec<SparseVec>], x: usize, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, c) in v.iter() {
            acc.push_scaled(&table[x][*i], c);
        }
        acc.finish()
    }

    /// `a · m` for `a ∈ A_r`, `m ∈ M_w`, landing in `M_{w+r}`.
    pub fn act_left(&self, alg: &QuadraticAlgebra, r: usize, a: &SparseVec, w: usize, m: &SparseVec) -> Result<SparseVec> {
        if self.out_of_range(w + r)? || a.is_zero() || m.is_zero() {
            return Ok(SparseVec::new());
        }
        if self.kind != BimoduleKind::Enveloping {
            return alg.multiply(r, a, w, m);
        }
        let mut acc = Accumulator::new();
        for (i, c) in a.iter() {
            let path = alg.basis_path(r, *i);
            let mut v = if r == 0 {
                self.filter_left(w, path.left, m)
            } else {
                m.clone()
            };
            for (step, &x) in path.arrows.iter().rev().enumerate() {
                v = Self::apply_table(&self.left[w + step], x, &v);
            }
            acc.push_scaled(&v, c);
        }
        Ok(acc.finish())
    }

    /// `m · a` for `m ∈ M_w`, `a ∈ A_r`, landing in `M_{w+r}`.
    pub fn act_right(&self, alg: &QuadraticAlgebra, w: usize, m: &SparseVec, r: usize, a: &SparseVec) -> Result<SparseVec> {
        if self.out_of_range(w + r)? || a.is_zero() || m.is_zero() {
            return Ok(SparseVec::new());
        }
        if self.kind != BimoduleKind::Enveloping {
            return alg.multiply(w, m, r, a);
        }
        let mut acc = Accumulator::new();
        for (i, c) in a.iter() {
            let path = alg.basis_path(r, *i);
            let mut v = if r == 0 {
                self.filter_right(w, path.right, m)
            } else {
                m.clone()
            };
            for (step, &x) in path.arrows.iter().enumerate() {
                v = Self::apply_table(&self.right[w + step], x, &v);
            }
            acc.push_scaled(&v, c);
        }
        Ok(acc.finish())
    }

    /// Left action of a single arrow through the stored tables.
    pub fn arrow_left(&self, x: usize, w: usize, m: &SparseVec) -> Result<SparseVec> {
        if self.out_of_range(w + 1)? {
            return Ok(SparseVec::new());
        }
        Ok(Self::apply_table(&self.left[w], x, m))
    }

    pub fn arrow_right(&self, w: usize, m: &SparseVec, x: usize) -> Result<SparseVec> {
        if self.out_of_range(w + 1)? {
            return Ok(SparseVec::new());
        }
        Ok(Self::apply_table(&self.right[w], x, m))
    }

    /// `e_i · m`.
    pub fn filter_left(&self, w: usize, i: usize, m: &SparseVec) -> SparseVec {
        let blocks = &self.blocks[w];
        SparseVec::from_sorted_unchecked(m.iter().filter(|(k, _)| blocks[*k].0 == i).cloned().collect())
    }

    /// `m · e_i`.
    pub fn filter_right(&self, w: usize, i: usize, m: &SparseVec) -> SparseVec {
        let blocks = &self.blocks[w];
        SparseVec::from_sorted_unchecked(m.iter().filter(|(k, _)| blocks[*k].1 == i).cloned().collect())
    }

    /// For `A^e`: the pair `(r, i, j)` of basis element `k` of weight `w`,
    /// standing for `α_i ⊗ β_j` with `α_i ∈ A_r`, `β_j ∈ A_{w-r}`.
    pub fn pair(&self, w: usize, k: usize) -> (usize, usize, usize) {
        self.pairs.as_ref().expect("enveloping bimodule").pairs[w][k]
    }

    /// For `A^e`: index of `α_i ⊗ β_j` with `α_i ∈ A_r`, `β_j ∈ A_s`.
    pub fn pair_index(&self, alg: &QuadraticAlgebra, r: usize, i: usize, s: usize, j: usize) -> usize {
        self.pairs.as_ref().expect("enveloping bimodule").index(r, i, s, j, alg)
    }

    /// For `A^e`: the inner action `u ↦ u · (β ⊗ α)`, i.e.
    /// `(α' ⊗ β') ↦ α'β ⊗ αβ'` for `α ∈ A_r`, `β ∈ A_s`.
    #[allow(clippy::too_many_arguments)]
    pub fn inner_action(
        &self,
        alg: &QuadraticAlgebra,
        w: usize,
        u: &SparseVec,
        r: usize,
        alpha: &SparseVec,
        s: usize,
        beta: &SparseVec,
    ) -> Result<SparseVec> {
        if self.out_of_range(w + r + s)? {
            return Ok(SparseVec::new());
        }
        let mut acc = Accumulator::new();
        for (k, c) in u.iter() {
            let (r1, i1, j1) = self.pair(w, *k);
            let s1 = w - r1;
            let left = alg.multiply(r1, &SparseVec::unit(i1, self.field), s, beta)?;
            let right = alg.multiply(r, alpha, s1, &SparseVec::unit(j1, self.field))?;
            for (p, x) in left.iter() {
                for (q, y) in right.iter() {
                    let idx = self.pair_index(alg, r1 + s, *p, r + s1, *q);
                    acc.push(idx, &(c * x) * y);
                }
            }
        }
        Ok(acc.finish())
    }

    pub fn format(&self, alg: &QuadraticAlgebra, w: usize, v: &SparseVec) -> String {
        match self.kind {
            BimoduleKind::Enveloping => format_combination(v, |k| {
                let (r, i, j) = self.pair(w, k);
                let q = alg.quiver();
                format!("({}|{})", alg.basis_path(r, i).display(q), alg.basis_path(w - r, j).display(q))
            }),
            _ => alg.format(w, v),
        }
    }
}

impl PairIndex {
    fn index(&self, r: usize, i: usize, s: usize, j: usize, alg: &QuadraticAlgebra) -> usize {
        self.offsets[r + s][r] + i * alg.dim(s) + j
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::presets;

    const Q: Field = Field::Rational;

    fn poly2(t: usize) -> QuadraticAlgebra {
        let (q, r) = presets::symmetric(Q, 2);
        build_algebra(&q, &r, t).unwrap()
    }

    #[test]
    fn enveloping_dims() {
        let a = poly2(4);
        let e = GradedBimodule::enveloping(&a);
        assert_eq!(e.dim(0), 1);
        assert_eq!(e.dim(2), 10);
        let (q, r) = presets::preprojective(Q, &presets::dynkin_a(3)).unwrap();
        let b = build_algebra(&q, &r, 3).unwrap();
        assert_eq!(GradedBimodule::enveloping(&b).dim(0), 9);
    }

    #[test]
    fn enveloping_idempotents() {
        let (q, r) = presets::preprojective(Q, &presets::dynkin_a(2)).unwrap();
        let a = build_algebra(&q, &r, 3).unwrap();
        let e = GradedBimodule::enveloping(&a);
        for k in 0..e.dim(0) {
            let (_, j, l) = e.pair(0, k);
            let v = SparseVec::unit(k, Q);
            for i in 0..2 {
                for m in 0..2 {
                    let left = e.act_left(&a, 0, &a.idempotent(i), 0, &v).unwrap();
                    let both = e.act_right(&a, 0, &left, 0, &a.idempotent(m)).unwrap();
                    let expected = if i == j && m == l { v.clone() } else { SparseVec::new() };
                    assert_eq!(both, expected);
                }
            }
        }
    }

    #[test]
    fn outer_actions_commute_and_inner_is_product() {
        let a = poly2(4);
        let e = GradedBimodule::enveloping(&a);
        let x = a.element_from_word(&["x"]).unwrap();
        let y = a.element_from_word(&["y"]).unwrap();
        for k in 0..e.dim(1) {
            let v = SparseVec::unit(k, Q);
            let l = e.act_left(&a, 1, &x, 1, &v).unwrap();
            let lr = e.act_right(&a, 2, &l, 1, &y).unwrap();
            let r = e.act_right(&a, 1, &v, 1, &y).unwrap();
            let rl = e.act_left(&a, 1, &x, 2, &r).unwrap();
            assert_eq!(lr, rl);
        }
        // (1 ⊗ 1) · (y ⊗ x) = y ⊗ x
        let one = SparseVec::unit(0, Q);
        let u = e.inner_action(&a, 0, &one, 1, &x, 1, &y).unwrap();
        let expected = SparseVec::unit(e.pair_index(&a, 1, 1, 1, 0), Q);
        assert_eq!(u, expected);
    }

    #[test]
    fn truncation_is_loud_for_a_and_silent_for_quotients() {
        let a = poly2(3);
        let m = GradedBimodule::algebra(&a);
        let x = a.element_from_word(&["x"]).unwrap();
        let top = a.element_from_word(&["x", "x", "x"]).unwrap();
        assert!(m.act_left(&a, 1, &x, 3, &top).is_err());
        let quo = GradedBimodule::quotient(&a, 2).unwrap();
        let xx = a.element_from_word(&["x", "x"]).unwrap();
        assert!(quo.act_left(&a, 1, &x, 2, &xx).unwrap().is_zero());
        assert!(!quo.truncated());
    }
}
