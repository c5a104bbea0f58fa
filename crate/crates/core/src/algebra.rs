//! Quadratic quiver algebras `A = T_k(V)/(R)` truncated at a weight.

use crate::error::{Error, Result};
use crate::linalg::{Accumulator, Field, Matrix, Scalar, SparseVec, Subspace};
use crate::quiver::{Path, PathBasis, Quiver};

/// A subbimodule `R` of paths of length two.
#[derive(Clone, Debug)]
pub struct RelationSpace {
    space: Subspace,
}

impl RelationSpace {
    /// Span of `relations`, each a vector over the length-two paths of `q`.
    ///
    /// Every relation must be supported on a single vertex block.
    pub fn new(field: Field, q: &Quiver, relations: &[SparseVec]) -> Result<RelationSpace> {
        let paths = PathBasis::new(q, 2)?;
        let ambient = paths.space(2).dim();
        for (k, r) in relations.iter().enumerate() {
            if r.max_index().is_some_and(|i| i >= ambient) {
                return Err(Error::NotComposable(format!("in relation {k}")));
            }
            let mut blocks = r.iter().map(|(i, _)| paths.path(2, *i).block());
            if let Some(first) = blocks.next() {
                if blocks.any(|b| b != first) {
                    return Err(Error::MixedBlocks(k));
                }
            }
        }
        Ok(RelationSpace { space: Subspace::span(field, ambient, relations) })
    }

    /// Relations given as lists of `(coefficient, [first arrow, second arrow])`.
    pub fn from_terms(field: Field, q: &Quiver, relations: &[Vec<(Scalar, Vec<String>)>]) -> Result<RelationSpace> {
        let paths = PathBasis::new(q, 2)?;
        let mut vectors = Vec::with_capacity(relations.len());
        for (k, terms) in relations.iter().enumerate() {
            let mut entries = Vec::with_capacity(terms.len());
            for (c, word) in terms {
                if word.len() != 2 {
                    return Err(Error::BadRelationLength { index: k, length: word.len() });
                }
                let arrows = word
                    .iter()
                    .map(|a| q.arrow_index(a).ok_or_else(|| Error::UnknownArrow(a.clone())))
                    .collect::<Result<Vec<_>>>()?;
                let idx = paths
                    .space(2)
                    .index_of_arrows(&arrows)
                    .ok_or_else(|| Error::NotComposable(word.join("")))?;
                entries.push((idx, c.clone()));
            }
            vectors.push(SparseVec::from_unsorted(entries));
        }
        RelationSpace::new(field, q, &vectors)
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Weight component `A_m`: a normal-form monomial basis and the projection of
/// every path of length `m` onto it.
#[derive(Clone, Debug)]
struct Component {
    ideal: Subspace,
    basis: Vec<usize>,
    projection: Vec<SparseVec>,
}

#[derive(Clone, Debug)]
pub struct QuadraticAlgebra {
    field: Field,
    quiver: Quiver,
    relations: RelationSpace,
    max_weight: usize,
    paths: PathBasis,
    components: Vec<Component>,
}

/// Builds `A` up to weight `t`.
pub fn build_algebra(q: &Quiver, r: &RelationSpace, t: usize) -> Result<QuadraticAlgebra> {
    QuadraticAlgebra::new(q.clone(), r.clone(), t)
}

impl QuadraticAlgebra {
    pub fn new(quiver: Quiver, relations: RelationSpace, max_weight: usize) -> Result<QuadraticAlgebra> {
        if max_weight < 2 {
            return Err(Error::WeightTooSmall { min: 2, got: max_weight });
        }
        let field = relations.space.field();
        let paths = PathBasis::new(&quiver, max_weight)?;
        let mut components = Vec::with_capacity(max_weight + 1);
        let mut ideal = Subspace::zero(field, paths.space(0).dim());
        for m in 0..=max_weight {
            let ambient = paths.space(m).dim();
            ideal = match m {
                0 | 1 => Subspace::zero(field, ambient),
                2 => relations.space.clone(),
                _ => {
                    // I_m = I_{m-1} ⊗ V + V^{m-2} ⊗ R
                    let mut gens = Vec::new();
                    for row in ideal.basis() {
                        for a in 0..quiver.num_arrows() {
                            gens.push(row.reindex(|k| paths.concat(m - 1, k, 1, a)));
                        }
                    }
                    for pre in 0..paths.space(m - 2).dim() {
                        for rel in relations.space.basis() {
                            gens.push(rel.reindex(|k| paths.concat(m - 2, pre, 2, k)));
                        }
                    }
                    gens.retain(|g| !g.is_zero());
                    Subspace::span(field, ambient, &gens)
                }
            };
            components.push(Self::component(field, ambient, ideal.clone()));
        }
        Ok(QuadraticAlgebra { field, quiver, relations, max_weight, paths, components })
    }

    fn component(field: Field, ambient: usize, ideal: Subspace) -> Component {
        let mut is_pivot = vec![None; ambient];
        for (row, &p) in ideal.pivots().iter().enumerate() {
            is_pivot[p] = Some(row);
        }
        let basis: Vec<usize> = (0..ambient).filter(|&k| is_pivot[k].is_none()).collect();
        let mut position = vec![usize::MAX; ambient];
        for (i, &k) in basis.iter().enumerate() {
            position[k] = i;
        }
        let projection = (0..ambient)
            .map(|k| match is_pivot[k] {
                None => SparseVec::unit(position[k], field),
                Some(row) => {
                    let entries = ideal.basis()[row]
                        .iter()
                        .filter(|(c, _)| *c != k)
                        .map(|(c, v)| (position[*c], -v))
                        .collect();
                    SparseVec::from_unsorted(entries)
                }
            })
            .collect();
        Component { ideal, basis, projection }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &RelationSpace {
        &self.relations
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn paths(&self) -> &PathBasis {
        &self.paths
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn num_arrows(&self) -> usize {
        self.quiver.num_arrows()
    }

    pub fn dim(&self, m: usize) -> usize {
        self.components.get(m).map_or(0, |c| c.basis.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.max_weight).map(|m| self.dim(m)).collect()
    }

    /// The normal-form monomial of basis element `i` of `A_m`.
    pub fn basis_path(&self, m: usize, i: usize) -> &Path {
        self.paths.path(m, self.components[m].basis[i])
    }

    pub fn block(&self, m: usize, i: usize) -> (usize, usize) {
        self.basis_path(m, i).block()
    }

    /// The relation ideal in weight `m`.
    pub fn ideal(&self, m: usize) -> &Subspace {
        &self.components[m].ideal
    }

    /// Image in `A_m` of path `k` of length `m`.
    pub fn project_path(&self, m: usize, k: usize) -> &SparseVec {
        &self.components[m].projection[k]
    }

    /// Image in `A_m` of a vector over paths of length `m`.
    pub fn project(&self, m: usize, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (k, c) in v.iter() {
            acc.push_scaled(&self.components[m].projection[*k], c);
        }
        acc.finish()
    }

    /// The projection `paths(m) → A_m` as a matrix.
    pub fn projection_matrix(&self, m: usize) -> Matrix {
        let cols = &self.components[m].projection;
        Matrix::from_columns(self.field, self.dim(m), cols)
    }

    pub fn unit(&self) -> SparseVec {
        SparseVec::from_sorted_unchecked((0..self.num_vertices()).map(|i| (i, self.field.one())).collect())
    }

    pub fn idempotent(&self, i: usize) -> SparseVec {
        SparseVec::unit(i, self.field)
    }

    fn check_weight(&self, w: usize) -> Result<()> {
        if w > self.max_weight {
            Err(Error::TruncationExceeded { requested: w, max: self.max_weight })
        } else {
            Ok(())
        }
    }

    /// Product of basis elements `i ∈ A_r` and `j ∈ A_s`; requires `r + s ≤ T`.
    pub fn multiply_basis(&self, r: usize, i: usize, s: usize, j: usize) -> SparseVec {
        let (a, b) = (self.components[r].basis[i], self.components[s].basis[j]);
        match self.paths.concat(r, a, s, b) {
            Some(k) => self.components[r + s].projection[k].clone(),
            None => SparseVec::new(),
        }
    }

    pub fn multiply(&self, r: usize, a: &SparseVec, s: usize, b: &SparseVec) -> Result<SparseVec> {
        self.check_weight(r + s)?;
        let mut acc = Accumulator::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                acc.push_scaled(&self.multiply_basis(r, *i, s, *j), &(x * y));
            }
        }
        Ok(acc.finish())
    }

    /// Element of `A_m` named by a word of arrow names (empty word: `1_A`).
    pub fn element_from_word(&self, word: &[&str]) -> Result<SparseVec> {
        if word.is_empty() {
            return Ok(self.unit());
        }
        self.check_weight(word.len())?;
        let arrows = word
            .iter()
            .map(|a| self.quiver.arrow_index(a).ok_or_else(|| Error::UnknownArrow(a.to_string())))
            .collect::<Result<Vec<_>>>()?;
        match self.paths.space(word.len()).index_of_arrows(&arrows) {
            Some(k) => Ok(self.project_path(word.len(), k).clone()),
            None => Ok(SparseVec::new()),
        }
    }

    /// Human-readable form of an element of `A_m`.
    pub fn format(&self, m: usize, v: &SparseVec) -> String {
        format_combination(v, |i| self.basis_path(m, i).display(&self.quiver))
    }
}

pub(crate) fn format_combination(v: &SparseVec, name: impl Fn(usize) -> String) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, c)) in v.iter().enumerate() {
        let text = c.to_string();
        let (neg, abs) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if abs != "1" {
            out.push_str(&abs);
            out.push('*');
        }
        out.push_str(&name(*i));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    const Q: Field = Field::Rational;

    #[test]
    fn polynomial_dims() {
        let (q, r) = presets::symmetric(Q, 2);
        let a = build_algebra(&q, &r, 4).unwrap();
        assert_eq!(a.dims(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn free_dims() {
        let (q, r) = presets::free(Q, 2);
        let a = build_algebra(&q, &r, 4).unwrap();
        assert_eq!(a.dims(), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn exterior_dims() {
        let (q, r) = presets::exterior(Q, 2);
        let a = build_algebra(&q, &r, 4).unwrap();
        assert_eq!(a.dims(), vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn products_in_examples() {
        let (q, r) = presets::symmetric(Q, 2);
        let a = build_algebra(&q, &r, 3).unwrap();
        let xy = a.element_from_word(&["x", "y"]).unwrap();
        let yx = a.element_from_word(&["y", "x"]).unwrap();
        assert_eq!(xy, yx);
        let x = a.element_from_word(&["x"]).unwrap();
        let y = a.element_from_word(&["y"]).unwrap();
        assert_eq!(a.multiply(1, &x, 1, &y).unwrap(), xy);
        assert!(matches!(a.multiply(2, &xy, 2, &xy), Err(Error::TruncationExceeded { .. })));

        let (q, r) = presets::exterior(Q, 2);
        let e = build_algebra(&q, &r, 3).unwrap();
        let x = e.element_from_word(&["x"]).unwrap();
        assert!(e.multiply(1, &x, 1, &x).unwrap().is_zero());
    }

    #[test]
    fn idempotents_are_orthogonal() {
        let (q, r) = presets::preprojective(Q, &[("1", "2")]).unwrap();
        let a = build_algebra(&q, &r, 3).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let p = a.multiply(0, &a.idempotent(i), 0, &a.idempotent(j)).unwrap();
                let expected = if i == j { a.idempotent(i) } else { SparseVec::new() };
                assert_eq!(p, expected);
            }
        }
    }

    #[test]
    fn weight_one_projection_is_identity() {
        let (q, r) = presets::symmetric(Q, 3);
        let a = build_algebra(&q, &r, 2).unwrap();
        assert_eq!(a.projection_matrix(1), Matrix::identity(Q, 3));
    }

    #[test]
    fn mixed_block_relation_rejected() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1"), ("c", "1", "1")]).unwrap();
        let paths = PathBasis::new(&q, 2).unwrap();
        // "ab" lives in block (2, 2), "cc" in block (1, 1)
        let ab = paths.space(2).index_of_arrows(&[0, 1]).unwrap();
        let cc = paths.space(2).index_of_arrows(&[2, 2]).unwrap();
        let bad = SparseVec::from_unsorted(vec![(ab, Q.one()), (cc, Q.one())]);
        assert!(matches!(RelationSpace::new(Q, &q, &[bad]), Err(Error::MixedBlocks(0))));
        let terms = vec![vec![(Q.one(), vec!["a".to_string(), "a".to_string()])]];
        assert!(matches!(RelationSpace::from_terms(Q, &q, &terms), Err(Error::NotComposable(_))));
        let terms = vec![vec![(Q.one(), vec!["c".to_string(); 3])]];
        assert!(matches!(RelationSpace::from_terms(Q, &q, &terms), Err(Error::BadRelationLength { .. })));
    }

    #[test]
    fn truncation_below_two_rejected() {
        let (q, r) = presets::symmetric(Q, 2);
        assert!(matches!(build_algebra(&q, &r, 1), Err(Error::WeightTooSmall { .. })));
    }
}
