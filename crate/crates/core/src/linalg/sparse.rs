use std::fmt;

use super::scalar::{Field, Scalar};

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: Field) -> Self {
        SparseVec { entries: vec![(index, field.one())] }
    }

    /// Sorts, merges duplicate indices and drops zeros.
    pub fn from_unsorted(mut entries: Vec<(usize, Scalar)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc += &v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|e| !e.1.is_zero());
        SparseVec { entries: out }
    }

    /// Builds from a dense slice, skipping zeros.
    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &Scalar) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.add_scaled(other, &v.field().one()),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.add_scaled(other, &v.field().from_int(-1)),
        }
    }

    pub fn dot(&self, other: &SparseVec, field: Field) -> Scalar {
        let mut acc = field.zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += &(x * y);
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Relabels indices through `f`; entries mapped to `None` are dropped.
    pub fn reindex(&self, mut f: impl FnMut(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_unsorted(
            self.entries.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))).collect(),
        )
    }

    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, Scalar)>) -> SparseVec {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| !e.1.is_zero()));
        SparseVec { entries }
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, v)| (i, v))).finish()
    }
}

/// Accumulates `(index, scalar)` contributions into a [`SparseVec`].
#[derive(Default)]
pub struct Accumulator {
    entries: Vec<(usize, Scalar)>,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator::default()
    }

    pub fn push(&mut self, index: usize, value: Scalar) {
        if !value.is_zero() {
            self.entries.push((index, value));
        }
    }

    pub fn push_scaled(&mut self, v: &SparseVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.entries.push((*i, x * c));
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec::from_unsorted(self.entries)
    }
}

/// A sparse matrix stored by rows. Matrices act on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl Matrix {
    pub fn zero(field: Field, nrows: usize, ncols: usize) -> Self {
        Matrix { field, nrows, ncols, rows: vec![SparseVec::new(); nrows] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Matrix { field, nrows: n, ncols: n, rows: (0..n).map(|i| SparseVec::unit(i, field)).collect() }
    }

    /// Panics if a row has an index out of bounds.
    pub fn from_rows(field: Field, ncols: usize, rows: Vec<SparseVec>) -> Self {
        for r in &rows {
            if let Some(m) = r.max_index() {
                assert!(m < ncols, "column index {m} out of bounds ({ncols})");
            }
        }
        Matrix { field, nrows: rows.len(), ncols, rows }
    }

    /// Builds the matrix whose j-th column is `cols[j]`.
    pub fn from_columns(field: Field, nrows: usize, cols: &[SparseVec]) -> Self {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter() {
                assert!(*i < nrows, "row index {i} out of bounds ({nrows})");
                rows[*i].push((j, v.clone()));
            }
        }
        Matrix {
            field,
            nrows,
            ncols: cols.len(),
            rows: rows.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    pub fn from_dense(field: Field, rows: &[Vec<Scalar>], ncols: usize) -> Self {
        Matrix::from_rows(field, ncols, rows.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    /// Convenience for tests and presets: integer entries.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Matrix::from_dense(field, &dense, ncols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i].get(j).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.nnz()).sum()
    }

    pub fn density(&self) -> f64 {
        if self.nrows == 0 || self.ncols == 0 {
            0.0
        } else {
            self.nnz() as f64 / (self.nrows as f64 * self.ncols as f64)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ncols, &self.rows)
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let entries = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let x = r.dot(v, self.field);
                (!x.is_zero()).then_some((i, x))
            })
            .collect();
        SparseVec::from_sorted_unchecked(entries)
    }

    /// Matrix product `self * other`. Panics on a dimension mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Accumulator::new();
                for (k, a) in r.iter() {
                    acc.push_scaled(&other.rows[*k], a);
                }
                acc.finish()
            })
            .collect();
        Matrix { field: self.field, nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| r.to_dense(self.ncols, self.field)).collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.ncols, "column mismatch in vstack");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Matrix { field: self.field, nrows: rows.len(), ncols: self.ncols, rows }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.nrows, self.ncols, self.field)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_scaled_cancels() {
        let f = Field::Rational;
        let a = SparseVec::from_unsorted(vec![(0, f.from_int(1)), (2, f.from_int(3))]);
        let b = SparseVec::from_unsorted(vec![(2, f.from_int(1)), (5, f.from_int(1))]);
        let c = a.add_scaled(&b, &f.from_int(-3));
        assert_eq!(c.entries(), &[(0, f.one()), (5, f.from_int(-3))]);
    }

    #[test]
    fn from_unsorted_merges() {
        let f = Field::Prime(3);
        let v = SparseVec::from_unsorted(vec![(4, f.one()), (1, f.one()), (4, f.from_int(2))]);
        assert_eq!(v.entries(), &[(1, f.one())]);
    }

    #[test]
    fn transpose_and_product() {
        let f = Field::Rational;
        let m = Matrix::from_ints(f, &[&[1, 2, 0], &[0, 1, 1]]);
        let t = m.transpose();
        assert_eq!(t.nrows(), 3);
        let g = m.mul(&t);
        assert_eq!(g.to_dense(), Matrix::from_ints(f, &[&[5, 2], &[2, 2]]).to_dense());
        let v = SparseVec::from_dense(&[f.one(), f.one(), f.one()]);
        assert_eq!(m.mul_vec(&v), SparseVec::from_dense(&[f.from_int(3), f.from_int(2)]));
    }
}
