use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};
use super::sparse::{Accumulator, Matrix, SparseVec};
use super::LinalgError;

/// Tuning knobs for elimination. Results never depend on them.
#[derive(Clone, Copy, Debug)]
pub struct EchelonOptions {
    /// Connected blocks at or above this density are eliminated densely.
    pub dense_threshold: f64,
    /// Blocks larger than this many cells always stay sparse.
    pub dense_max_cells: usize,
}

impl Default for EchelonOptions {
    fn default() -> Self {
        EchelonOptions { dense_threshold: 0.3, dense_max_cells: 1 << 22 }
    }
}

/// Reduced row-echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    /// Same shape as the input; the first `rank` rows are the nonzero ones.
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Matrix) -> Rref {
    rref_with(m, &EchelonOptions::default())
}

pub fn rref_with(m: &Matrix, opts: &EchelonOptions) -> Rref {
    let field = m.field();
    let mut basis = echelon_rows(field, m.ncols(), m.rows(), opts);
    let rank = basis.len();
    let pivots: Vec<usize> = basis.iter().map(|r| r.leading().unwrap().0).collect();
    basis.resize(m.nrows().max(rank), SparseVec::new());
    Rref { matrix: Matrix::from_rows(field, m.ncols(), basis), pivots, rank }
}

pub fn rank(m: &Matrix) -> usize {
    echelon_rows(m.field(), m.ncols(), m.rows(), &EchelonOptions::default()).len()
}

/// Nonzero RREF rows of the span of `rows`, sorted by pivot.
///
/// The row space is split into connected blocks (columns linked by a shared
/// row); the RREF of the whole is the pivot-sorted union of the blocks' RREFs.
pub(crate) fn echelon_rows(
    field: Field,
    ncols: usize,
    rows: &[SparseVec],
    opts: &EchelonOptions,
) -> Vec<SparseVec> {
    let live: Vec<&SparseVec> = rows.iter().filter(|r| !r.is_zero()).collect();
    if live.is_empty() {
        return Vec::new();
    }
    let mut uf = UnionFind::new(ncols);
    for r in &live {
        let mut it = r.iter();
        let first = it.next().unwrap().0;
        for (j, _) in it {
            uf.union(first, *j);
        }
    }
    let mut groups: BTreeMap<usize, Vec<&SparseVec>> = BTreeMap::new();
    for r in &live {
        groups.entry(uf.find(r.leading().unwrap().0)).or_default().push(r);
    }

    let mut out: Vec<SparseVec> = Vec::new();
    if groups.len() == 1 {
        out.extend(eliminate_block(field, ncols, &live, opts));
    } else {
        for block in groups.values() {
            // Relabel the block's columns densely, eliminate, map back.
            let mut cols: Vec<usize> = block.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
            cols.sort_unstable();
            cols.dedup();
            let local: Vec<SparseVec> = block
                .iter()
                .map(|r| r.reindex(|j| Some(cols.binary_search(&j).unwrap())))
                .collect();
            let refs: Vec<&SparseVec> = local.iter().collect();
            for r in eliminate_block(field, cols.len(), &refs, opts) {
                out.push(r.reindex(|j| Some(cols[j])));
            }
        }
        out.sort_by_key(|r| r.leading().unwrap().0);
    }
    out
}

fn eliminate_block(
    field: Field,
    ncols: usize,
    rows: &[&SparseVec],
    opts: &EchelonOptions,
) -> Vec<SparseVec> {
    let cells = rows.len().saturating_mul(ncols);
    let nnz: usize = rows.iter().map(|r| r.nnz()).sum();
    let density = if cells == 0 { 0.0 } else { nnz as f64 / cells as f64 };
    if cells <= opts.dense_max_cells && density >= opts.dense_threshold {
        dense_rref(field, ncols, rows)
    } else {
        sparse_rref(rows)
    }
}

fn sparse_rref(rows: &[&SparseVec]) -> Vec<SparseVec> {
    // Forward pass: echelon rows keyed by pivot, each with leading 1.
    let mut pivots: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for r in rows {
        let mut cur = (*r).clone();
        while let Some((c, v)) = cur.leading().cloned() {
            match pivots.get(&c) {
                Some(p) => cur = cur.add_scaled(p, &-&v),
                None => {
                    let normalized = cur.scale(&v.inv());
                    pivots.insert(c, normalized);
                    break;
                }
            }
        }
    }
    // Back substitution, largest pivot first; reduced rows only carry
    // non-pivot columns besides their own pivot.
    let keys: Vec<usize> = pivots.keys().copied().collect();
    let mut reduced: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for &c in keys.iter().rev() {
        let row = pivots.remove(&c).unwrap();
        let hits: Vec<(usize, Scalar)> = row
            .iter()
            .filter(|(j, _)| *j != c && reduced.contains_key(j))
            .cloned()
            .collect();
        let row = if hits.is_empty() {
            row
        } else {
            let mut acc = Accumulator::new();
            acc.push_scaled(&row, &row.leading().unwrap().1.field().one());
            for (j, v) in hits {
                acc.push_scaled(&reduced[&j], &-&v);
            }
            acc.finish()
        };
        reduced.insert(c, row);
    }
    reduced.into_values().collect()
}

fn dense_rref(field: Field, ncols: usize, rows: &[&SparseVec]) -> Vec<SparseVec> {
    let mut a: Vec<Vec<Scalar>> = rows.iter().map(|r| r.to_dense(ncols, field)).collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].inv();
        for x in a[rank][col..].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !y.is_zero() {
                    *x = &*x - &(y * &factor);
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    a.truncate(rank);
    a.iter().map(|r| SparseVec::from_dense(r)).collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A linear subspace of `field^ambient`, held as an RREF basis.
///
/// Because RREF is canonical, two subspaces are equal iff their bases are.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subspace")
            .field("ambient", &self.ambient)
            .field("basis", &self.basis)
            .finish()
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: (0..ambient).map(|i| SparseVec::unit(i, field)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[SparseVec]) -> Self {
        let basis = echelon_rows(field, ambient, vectors, &EchelonOptions::default());
        let pivots = basis.iter().map(|r| r.leading().unwrap().0).collect();
        Subspace { field, ambient, basis, pivots }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        Subspace::span(m.field(), m.ncols(), m.rows())
    }

    /// Column space of `m`.
    pub fn column_space(m: &Matrix) -> Self {
        Subspace::row_space(&m.transpose())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, self.basis.clone())
    }

    /// Reduces `v` against the basis, returning `(coordinates, residual)`.
    pub fn reduce(&self, v: &SparseVec) -> (Vec<Scalar>, SparseVec) {
        let mut coords = Vec::with_capacity(self.dim());
        let mut acc = Accumulator::new();
        acc.push_scaled(v, &self.field.one());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v.get(p).cloned().unwrap_or_else(|| self.field.zero());
            if !c.is_zero() {
                acc.push_scaled(b, &-&c);
            }
            coords.push(c);
        }
        (coords, acc.finish())
    }

    /// Unique coordinates of `v` in the basis, or `None` when `v` is not in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let (coords, residual) = self.reduce(v);
        residual.is_zero().then_some(coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Linear combination of basis vectors.
    pub fn combine(&self, coords: &[Scalar]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (b, c) in self.basis.iter().zip(coords) {
            acc.push_scaled(b, c);
        }
        acc.finish()
    }

    /// The orthogonal complement for the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        kernel_basis(&self.basis_matrix())
    }
}

/// `{ v : m v = 0 }`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let field = m.field();
    let basis = echelon_rows(field, m.ncols(), m.rows(), &EchelonOptions::default());
    let mut pivot_row = vec![None; m.ncols()];
    for (i, r) in basis.iter().enumerate() {
        pivot_row[r.leading().unwrap().0] = Some(i);
    }
    let mut free_cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); m.ncols()];
    for r in &basis {
        let p = r.leading().unwrap().0;
        for (j, v) in r.iter().skip(1) {
            free_cols[*j].push((p, -v));
        }
    }
    let vectors: Vec<SparseVec> = (0..m.ncols())
        .filter(|&j| pivot_row[j].is_none())
        .map(|j| {
            let mut e = std::mem::take(&mut free_cols[j]);
            e.push((j, field.one()));
            SparseVec::from_unsorted(e)
        })
        .collect();
    Subspace::span(field, m.ncols(), &vectors)
}

/// Intersection of subspaces of a common ambient space, as the kernel of the
/// stacked annihilators.
pub fn intersect(spaces: &[Subspace]) -> Result<Subspace, LinalgError> {
    let first = spaces.first().ok_or(LinalgError::EmptyIntersection)?;
    let (field, ambient) = (first.field, first.ambient);
    if let Some(bad) = spaces.iter().find(|s| s.ambient != ambient) {
        return Err(LinalgError::AmbientMismatch { expected: ambient, found: bad.ambient });
    }
    if spaces.len() == 1 {
        return Ok(first.clone());
    }
    let mut constraints = Vec::new();
    for s in spaces {
        constraints.extend(s.annihilator().basis);
    }
    Ok(kernel_basis(&Matrix::from_rows(field, ambient, constraints)))
}

/// Pairwise left fold of two-space intersections; agrees with [`intersect`].
pub fn intersect_pairwise(spaces: &[Subspace]) -> Result<Subspace, LinalgError> {
    let first = spaces.first().ok_or(LinalgError::EmptyIntersection)?;
    spaces[1..].iter().try_fold(first.clone(), |acc, s| intersect(&[acc, s.clone()]))
}

/// Coordinates of `v` in the RREF basis of `s`, or `None` if `v ∉ s`.
pub fn coordinates(v: &SparseVec, s: &Subspace) -> Option<Vec<Scalar>> {
    s.coordinates(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(q(), 3);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);

        let z = Matrix::zero(q(), 2, 5);
        let r = rref(&z);
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_rank_one_by_hand() {
        let m = Matrix::from_ints(q(), &[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.matrix, Matrix::from_ints(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        let m = Matrix::from_ints(q(), &[&[0, 2, 4, 1], &[1, 1, 0, 3], &[1, 3, 4, 4], &[2, 0, 1, 0]]);
        let sparse = rref_with(&m, &EchelonOptions { dense_threshold: 2.0, ..Default::default() });
        let dense = rref_with(&m, &EchelonOptions { dense_threshold: 0.0, ..Default::default() });
        assert_eq!(sparse.matrix, dense.matrix);
        assert_eq!(sparse.rank, 3);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(q(), 4)).dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zero(q(), 2, 3)), Subspace::full(q(), 3));
        let k = kernel_basis(&Matrix::from_ints(q(), &[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], SparseVec::from_dense(&[q().one(), q().from_int(-1)]));
    }

    #[test]
    fn intersect_examples() {
        let full = Subspace::full(q(), 3);
        assert_eq!(intersect(&[full.clone(), full.clone()]).unwrap(), full);

        let e1 = Subspace::span(q(), 2, &[SparseVec::unit(0, q())]);
        let e2 = Subspace::span(q(), 2, &[SparseVec::unit(1, q())]);
        assert_eq!(intersect(&[e1, e2]).unwrap().dim(), 0);

        let v = |xs: &[i64]| SparseVec::from_dense(&xs.iter().map(|&x| q().from_int(x)).collect::<Vec<_>>());
        let a = Subspace::span(q(), 4, &[v(&[1, -1, 0, 0]), v(&[0, 0, 1, 0])]);
        let b = Subspace::span(q(), 4, &[v(&[1, -1, 0, 0]), v(&[0, 0, 0, 1])]);
        let expected = Subspace::span(q(), 4, &[v(&[1, -1, 0, 0])]);
        assert_eq!(intersect(&[a.clone(), b.clone()]).unwrap(), expected);
        assert_eq!(intersect_pairwise(&[a, b]).unwrap(), expected);
    }

    #[test]
    fn intersect_rejects_mismatch() {
        let err = intersect(&[Subspace::full(q(), 2), Subspace::full(q(), 3)]).unwrap_err();
        assert!(matches!(err, LinalgError::AmbientMismatch { expected: 2, found: 3 }));
        assert!(matches!(intersect(&[]), Err(LinalgError::EmptyIntersection)));
    }

    #[test]
    fn coordinate_examples() {
        let s = Subspace::span(q(), 3, &[SparseVec::unit(0, q()), SparseVec::unit(1, q())]);
        assert_eq!(coordinates(&SparseVec::unit(1, q()), &s), Some(vec![q().zero(), q().one()]));
        assert_eq!(coordinates(&SparseVec::new(), &s), Some(vec![q().zero(), q().zero()]));
        let v = SparseVec::from_dense(&[q().one(), q().from_int(-1), q().zero()]);
        assert_eq!(coordinates(&v, &s), Some(vec![q().one(), q().from_int(-1)]));
        assert_eq!(coordinates(&SparseVec::unit(2, q()), &s), None);
    }

    #[test]
    fn block_split_matches_monolithic() {
        // Two disconnected column groups.
        let m = Matrix::from_ints(q(), &[&[1, 0, 2, 0], &[0, 3, 0, 1], &[2, 0, 4, 0], &[0, 1, 0, 5]]);
        let r = rref(&m);
        let d = dense_rref(q(), 4, &m.rows().iter().collect::<Vec<_>>());
        assert_eq!(&r.matrix.rows()[..r.rank], &d[..]);
    }
}
