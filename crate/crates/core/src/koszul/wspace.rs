use std::collections::HashMap;

use crate::algebra::QuadraticAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Accumulator, Field, Matrix, Scalar, SparseVec, Subspace};
use crate::quiver::PathBasis;

/// `W_p` as a subspace of the paths of length `p`.
#[derive(Clone, Debug)]
pub struct WSpace {
    p: usize,
    space: Subspace,
    blocks: Vec<(usize, usize)>,
}

impl WSpace {
    fn new(paths: &PathBasis, p: usize, space: Subspace) -> WSpace {
        let blocks = space.basis().iter().map(|v| paths.path(p, v.leading().unwrap().0).block()).collect();
        WSpace { p, space, blocks }
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> &[SparseVec] {
        self.space.basis()
    }

    pub fn vector(&self, a: usize) -> &SparseVec {
        &self.space.basis()[a]
    }

    /// Vertex block `(left, right)` of basis vector `a`.
    pub fn block(&self, a: usize) -> (usize, usize) {
        self.blocks[a]
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    /// Leading path of basis vector `a`; its coefficient there is one and all
    /// other basis vectors vanish on it.
    pub fn pivot(&self, a: usize) -> usize {
        self.space.pivots()[a]
    }
}

/// A term `c · (w^{(p)}_a ⊗ w^{(q)}_b)` of a decomposition.
pub type DecompTerm = (usize, usize, Scalar);

/// The spaces `W_0, …, W_P` of an algebra with their pairwise decompositions.
#[derive(Clone, Debug)]
pub struct WTower {
    field: Field,
    spaces: Vec<WSpace>,
    /// `decomp[p][q][k]`: basis vector `k` of `W_{p+q}` in `W_p ⊗ W_q`.
    decomp: Vec<Vec<Vec<Vec<DecompTerm>>>>,
    /// Every `W_p` with `p` at or above this degree is zero.
    zero_from: Option<usize>,
}

/// `W_p` computed directly from the algebra.
///
/// Uses `W_p = (W_{p-1} ⊗ V) ∩ (V^{⊗(p-2)} ⊗ R)`: a combination of
/// `w ⊗ x` lies in the second space iff every length-two tail projects to
/// zero in `A_2`.
pub fn compute_w(a: &QuadraticAlgebra, p: usize) -> Result<WSpace> {
    if p > a.max_weight() {
        return Err(Error::TruncationExceeded { requested: p, max: a.max_weight() });
    }
    let mut w = WSpace::new(a.paths(), 0, Subspace::full(a.field(), a.paths().space(0).dim()));
    for k in 1..=p {
        w = next_w(a, &w, k);
    }
    Ok(w)
}

fn next_w(a: &QuadraticAlgebra, prev: &WSpace, p: usize) -> WSpace {
    let field = a.field();
    let paths = a.paths();
    let ambient = paths.space(p).dim();
    match p {
        0 => return WSpace::new(paths, 0, Subspace::full(field, ambient)),
        1 => return WSpace::new(paths, 1, Subspace::full(field, ambient)),
        2 => return WSpace::new(paths, 2, a.relations().space().clone()),
        _ => {}
    }
    // Candidates w_b ⊗ x.
    let mut candidates = Vec::new();
    for wb in prev.basis() {
        for x in 0..a.num_arrows() {
            let v = wb.reindex(|k| paths.concat(p - 1, k, 1, x));
            if !v.is_zero() {
                candidates.push(v);
            }
        }
    }
    if candidates.is_empty() {
        return WSpace::new(paths, p, Subspace::zero(field, ambient));
    }
    // Constraint rows indexed by (prefix of length p-2, basis element of A_2).
    let mut rows: HashMap<(usize, usize), usize> = HashMap::new();
    let mut columns = Vec::with_capacity(candidates.len());
    for v in &candidates {
        let mut acc = Accumulator::new();
        for (k, c) in v.iter() {
            let (u, tail) = paths.split(p - 2, 2, *k);
            for (m, pc) in a.project_path(2, tail).iter() {
                let next = rows.len();
                let row = *rows.entry((u, *m)).or_insert(next);
                acc.push(row, c * pc);
            }
        }
        columns.push(acc.finish());
    }
    let constraints = Matrix::from_columns(field, rows.len(), &columns);
    let kernel = kernel_basis(&constraints);
    let vectors: Vec<SparseVec> = kernel
        .basis()
        .iter()
        .map(|coeffs| {
            let mut acc = Accumulator::new();
            for (j, c) in coeffs.iter() {
                acc.push_scaled(&candidates[*j], c);
            }
            acc.finish()
        })
        .collect();
    WSpace::new(paths, p, Subspace::span(field, ambient, &vectors))
}

impl WTower {
    /// Computes `W_p` for `p ≤ max_p` and every decomposition `W_{p+q} → W_p ⊗ W_q`.
    ///
    /// Fails with [`Error::NotInSpan`] if some `W_{p+q}` is not contained in `W_p ⊗ W_q`.
    pub fn new(a: &QuadraticAlgebra, max_p: usize) -> Result<WTower> {
        if max_p > a.max_weight() {
            return Err(Error::TruncationExceeded { requested: max_p, max: a.max_weight() });
        }
        let mut spaces: Vec<WSpace> = Vec::with_capacity(max_p + 1);
        let mut zero_from = None;
        for p in 0..=max_p {
            let w = match spaces.last() {
                Some(prev) => next_w(a, prev, p),
                None => WSpace::new(a.paths(), 0, Subspace::full(a.field(), a.num_vertices())),
            };
            if w.dim() == 0 && zero_from.is_none() {
                zero_from = Some(p);
            }
            spaces.push(w);
        }
        let mut tower = WTower { field: a.field(), spaces, decomp: Vec::new(), zero_from };
        let mut decomp = Vec::with_capacity(max_p + 1);
        for p in 0..=max_p {
            let mut row = Vec::with_capacity(max_p + 1 - p);
            for q in 0..=(max_p - p) {
                let target = &tower.spaces[p + q];
                let mut per = Vec::with_capacity(target.dim());
                for k in 0..target.dim() {
                    per.push(tower.decompose_vector(a.paths(), p, q, target.vector(k))?);
                }
                row.push(per);
            }
            decomp.push(row);
        }
        tower.decomp = decomp;
        Ok(tower)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Largest computed degree.
    pub fn max_p(&self) -> usize {
        self.spaces.len() - 1
    }

    /// `W_p`, or `None` above the computed range.
    pub fn get(&self, p: usize) -> Option<&WSpace> {
        self.spaces.get(p)
    }

    pub fn w(&self, p: usize) -> &WSpace {
        &self.spaces[p]
    }

    /// `dim W_p`; zero when known to vanish, `None` when not computed.
    pub fn dim(&self, p: usize) -> Option<usize> {
        match self.spaces.get(p) {
            Some(w) => Some(w.dim()),
            None => self.zero_from.map(|_| 0),
        }
    }

    /// First degree from which every `W_p` vanishes, if reached.
    pub fn zero_from(&self) -> Option<usize> {
        self.zero_from
    }

    /// Decomposition of basis vector `k` of `W_{p+q}` in `W_p ⊗ W_q`.
    pub fn decompose(&self, p: usize, q: usize, k: usize) -> &[DecompTerm] {
        &self.decomp[p][q][k]
    }

    /// Coordinates of `omega ∈ W_{p+q}` in the basis `w^{(p)}_a ⊗ w^{(q)}_b`.
    ///
    /// Reads the coefficients off the pivot products and then checks the
    /// reconstruction.
    pub fn decompose_vector(&self, paths: &PathBasis, p: usize, q: usize, omega: &SparseVec) -> Result<Vec<DecompTerm>> {
        let (wp, wq) = (&self.spaces[p], &self.spaces[q]);
        let mut terms = Vec::new();
        for a in 0..wp.dim() {
            for b in 0..wq.dim() {
                let Some(k) = paths.concat(p, wp.pivot(a), q, wq.pivot(b)) else {
                    continue;
                };
                if let Some(c) = omega.get(k) {
                    terms.push((a, b, c.clone()));
                }
            }
        }
        let rebuilt = self.embed(paths, p, q, &terms);
        if &rebuilt != omega {
            return Err(Error::NotInSpan(format!("W_{p} ⊗ W_{q}")));
        }
        Ok(terms)
    }

    /// `Σ c · (w_a ⊗ w_b)` as a vector over paths of length `p + q`.
    pub fn embed(&self, paths: &PathBasis, p: usize, q: usize, terms: &[DecompTerm]) -> SparseVec {
        let (wp, wq) = (&self.spaces[p], &self.spaces[q]);
        let mut acc = Accumulator::new();
        for (a, b, c) in terms {
            for (i, x) in wp.vector(*a).iter() {
                for (j, y) in wq.vector(*b).iter() {
                    if let Some(k) = paths.concat(p, *i, q, *j) {
                        acc.push(k, &(c * x) * y);
                    }
                }
            }
        }
        acc.finish()
    }
}

/// `Σ_σ sgn(σ) v_{σ(1)} ⊗ … ⊗ v_{σ(p)}` for vectors in `V` over a one-vertex quiver.
pub fn antisymmetrize(a: &QuadraticAlgebra, vectors: &[SparseVec]) -> Result<SparseVec> {
    if a.num_vertices() != 1 {
        return Err(Error::Unsupported("a one-vertex quiver".into()));
    }
    let p = vectors.len();
    if p > a.max_weight() {
        return Err(Error::TruncationExceeded { requested: p, max: a.max_weight() });
    }
    let field = a.field();
    let paths = a.paths();
    if p == 0 {
        return Ok(SparseVec::unit(0, field));
    }
    let mut acc = Accumulator::new();
    for (perm, sign) in permutations(p) {
        // tensor product v_{σ(1)} ⊗ … ⊗ v_{σ(p)}
        let mut words: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), field.sign(sign))];
        for &i in &perm {
            let mut next = Vec::new();
            for (word, c) in &words {
                for (x, v) in vectors[i].iter() {
                    let mut w = word.clone();
                    w.push(*x);
                    next.push((w, c * v));
                }
            }
            words = next;
        }
        for (word, c) in words {
            acc.push(paths.space(p).index_of_arrows(&word).expect("loops compose"), c);
        }
    }
    Ok(acc.finish())
}

/// All permutations of `0..n` with their inversion parity, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, usize)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, usize)>) {
        let n = used.len();
        if prefix.len() == n {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| prefix[i] > prefix[j]).count();
            out.push((prefix.clone(), inv % 2));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `Ant_p(x_{i_1} ⊗ … ⊗ x_{i_p})` for every increasing tuple of arrow indices.
pub fn antisymmetric_basis(a: &QuadraticAlgebra, p: usize) -> Result<Vec<SparseVec>> {
    let n = a.num_arrows();
    let field = a.field();
    subsets(n, p)
        .into_iter()
        .map(|s| {
            let vs: Vec<SparseVec> = s.iter().map(|&i| SparseVec::unit(i, field)).collect();
            antisymmetrize(a, &vs)
        })
        .collect()
}

/// Increasing `p`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}
