use std::collections::BTreeMap;

use crate::bimodule::GradedBimodule;
use crate::error::{Error, Result};
use crate::koszul::KoszulAlgebra;
use crate::linalg::{homology, Homology, Matrix, Scalar, SparseVec};

use super::ops::{b_hom_matrix, b_k_matrix, cap_left, cup, fundamental_cocycle};
use super::{Chain, Cochain, PairBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Cohomology,
    Homology,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Cohomology => "cohomology",
            Direction::Homology => "homology",
        }
    }
}

/// One `(p, t)` slice of Koszul (co)homology.
///
/// Cohomology slices have total degree `t = w − p`, homology slices
/// `t = w + p`, where `w` is the coefficient weight.
#[derive(Clone, Debug)]
pub struct HkSlice {
    pub direction: Direction,
    pub p: usize,
    pub t: i64,
    pub w: usize,
    pub dim: usize,
    /// Some neighbouring map was cut off by truncation.
    pub edge: bool,
    pub basis: PairBasis,
    pub homology: Homology,
}

impl HkSlice {
    /// Coordinates of the class of `v` (flat coordinates), `None` if not a (co)cycle.
    pub fn class_of(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        self.homology.class_of(v)
    }

    pub fn class_of_cochain(&self, f: &Cochain) -> Option<Vec<Scalar>> {
        self.class_of(&self.basis.flatten(&f.values)?)
    }

    pub fn class_of_chain(&self, z: &Chain) -> Option<Vec<Scalar>> {
        self.class_of(&self.basis.flatten(&z.values)?)
    }

    /// Representative of the `i`-th basis class.
    pub fn representative(&self, i: usize) -> &SparseVec {
        &self.homology.representatives.basis()[i]
    }

    pub fn combine(&self, coords: &[Scalar]) -> SparseVec {
        self.homology.representatives.combine(coords)
    }
}

#[derive(Clone, Debug)]
pub struct HkTable {
    pub direction: Direction,
    pub module: String,
    slices: BTreeMap<(i64, usize), HkSlice>,
}

impl HkTable {
    pub fn get(&self, p: usize, t: i64) -> Option<&HkSlice> {
        self.slices.get(&(t, p))
    }

    /// Slices ordered by `(t, p)`.
    pub fn slices(&self) -> impl Iterator<Item = &HkSlice> {
        self.slices.values()
    }
}

/// Largest `p` with `W_p` possibly nonzero among computed degrees.
fn top_degree(ka: &KoszulAlgebra) -> usize {
    let tower = ka.tower();
    match tower.zero_from() {
        Some(z) => z.saturating_sub(1).min(tower.max_p()),
        None => tower.max_p(),
    }
}

/// Whether `W_p` is known (computed, or known to vanish).
fn w_known(ka: &KoszulAlgebra, p: usize) -> bool {
    ka.tower().dim(p).is_some()
}

fn w_zero(ka: &KoszulAlgebra, p: usize) -> bool {
    ka.tower().dim(p) == Some(0)
}

/// Computes the `(p, t)` slice, or `None` when the coefficient weight is
/// outside `M`'s range.
pub fn hk_slice(ka: &KoszulAlgebra, m: &GradedBimodule, dir: Direction, p: usize, t: i64) -> Result<Option<HkSlice>> {
    let w = match dir {
        Direction::Cohomology => t + p as i64,
        Direction::Homology => t - p as i64,
    };
    if w < 0 || w as usize > m.max_weight() || !w_known(ka, p) || w_zero(ka, p) {
        return Ok(None);
    }
    let w = w as usize;
    let field = ka.field();
    let top = m.max_weight();
    let mut edge = false;
    let (basis, d_in, d_out) = match dir {
        Direction::Cohomology => {
            let basis = PairBasis::cochains(ka, m, p, w);
            let d_in = if p >= 1 && w >= 1 {
                b_k_matrix(ka, m, p - 1, w - 1)?
            } else {
                Matrix::zero(field, basis.dim(), 0)
            };
            let d_out = if w_zero(ka, p + 1) || (w + 1 > top && !m.truncated()) {
                Matrix::zero(field, 0, basis.dim())
            } else if !w_known(ka, p + 1) || w + 1 > top {
                edge = true;
                Matrix::zero(field, 0, basis.dim())
            } else {
                b_k_matrix(ka, m, p, w)?
            };
            (basis, d_in, d_out)
        }
        Direction::Homology => {
            let basis = PairBasis::chains(ka, m, p, w);
            let d_in = if w == 0 || w_zero(ka, p + 1) {
                Matrix::zero(field, basis.dim(), 0)
            } else if !w_known(ka, p + 1) {
                edge = true;
                Matrix::zero(field, basis.dim(), 0)
            } else {
                b_hom_matrix(ka, m, p + 1, w - 1)?
            };
            let d_out = if p == 0 || (w + 1 > top && !m.truncated()) {
                Matrix::zero(field, 0, basis.dim())
            } else if w + 1 > top {
                edge = true;
                Matrix::zero(field, 0, basis.dim())
            } else {
                b_hom_matrix(ka, m, p, w)?
            };
            (basis, d_in, d_out)
        }
    };
    let h = homology(&d_in, &d_out)?;
    Ok(Some(HkSlice { direction: dir, p, t, w, dim: h.dim, edge, basis, homology: h }))
}

/// All nonempty slices with coefficient weight in `M`'s range.
pub fn hk(ka: &KoszulAlgebra, m: &GradedBimodule, dir: Direction) -> Result<HkTable> {
    let mut slices = BTreeMap::new();
    for p in 0..=top_degree(ka) {
        for w in 0..=m.max_weight() {
            let t = match dir {
                Direction::Cohomology => w as i64 - p as i64,
                Direction::Homology => w as i64 + p as i64,
            };
            if let Some(s) = hk_slice(ka, m, dir, p, t)? {
                slices.insert((t, p), s);
            }
        }
    }
    Ok(HkTable { direction: dir, module: m.name().to_string(), slices })
}

/// Which product to take of two class representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassOp {
    /// cochain ⌣ cochain
    Cup,
    /// cochain (over `A`) ⌢ chain
    CapLeft,
    /// chain ⌢ cochain (over `A`)
    CapRight,
}

/// Product of two classes, expressed in the class basis of `target`.
///
/// `x` and `y` are class coordinates in `xs` and `ys`. Fails when the product
/// of representatives is not a (co)cycle of the target slice.
#[allow(clippy::too_many_arguments)]
pub fn class_product(
    ka: &KoszulAlgebra,
    op: ClassOp,
    xm: &GradedBimodule,
    xs: &HkSlice,
    x: &[Scalar],
    ym: &GradedBimodule,
    ys: &HkSlice,
    y: &[Scalar],
    target: &HkSlice,
) -> Result<Vec<Scalar>> {
    let xv = xs.combine(x);
    let yv = ys.combine(y);
    let flat = match op {
        ClassOp::Cup => {
            let f = xs.basis.cochain(ka, &xv);
            let g = ys.basis.cochain(ka, &yv);
            let h = cup(ka, xm, &f, ym, &g)?;
            target.basis.flatten(&h.values)
        }
        ClassOp::CapLeft => {
            let f = xs.basis.cochain(ka, &xv);
            let z = ys.basis.chain(ka, &yv);
            let h = cap_left(ka, xm, &f, ym, &z)?;
            h.and_then(|h| target.basis.flatten(&h.values))
        }
        ClassOp::CapRight => {
            let z = xs.basis.chain(ka, &xv);
            let f = ys.basis.cochain(ka, &yv);
            let h = super::ops::cap_right(ka, xm, &z, ym, &f)?;
            h.and_then(|h| target.basis.flatten(&h.values))
        }
    };
    flat.and_then(|v| target.class_of(&v))
        .ok_or_else(|| Error::NotInSpan(format!("cycles of slice (p={}, t={})", target.p, target.t)))
}

/// A slice of higher Koszul (co)homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigherSlice {
    pub p: usize,
    pub t: i64,
    pub dim: usize,
    pub edge: bool,
}

#[derive(Clone, Debug)]
pub struct HigherTable {
    pub direction: Direction,
    pub slices: Vec<HigherSlice>,
}

impl HigherTable {
    pub fn get(&self, p: usize, t: i64) -> Option<&HigherSlice> {
        self.slices.iter().find(|s| s.p == p && s.t == t)
    }
}

/// Matrix of `[ē_A] ⌣ −` (cohomology) or `[ē_A] ⌢ −` (homology) from slice
/// `(p, t)` to the adjacent slice, in class coordinates.
fn induced_map(ka: &KoszulAlgebra, a: &GradedBimodule, m: &GradedBimodule, src: &HkSlice, dst: Option<&HkSlice>) -> Result<Matrix> {
    let field = ka.field();
    let Some(dst) = dst else {
        return Ok(Matrix::zero(field, 0, src.dim));
    };
    let e = fundamental_cocycle(ka);
    let mut cols = Vec::with_capacity(src.dim);
    for i in 0..src.dim {
        let rep = src.representative(i);
        let image = match src.direction {
            Direction::Cohomology => {
                let f = src.basis.cochain(ka, rep);
                dst.basis.flatten(&cup(ka, a, &e, m, &f)?.values)
            }
            Direction::Homology => {
                let z = src.basis.chain(ka, rep);
                cap_left(ka, a, &e, m, &z)?.and_then(|h| dst.basis.flatten(&h.values))
            }
        };
        let coords = image
            .and_then(|v| dst.class_of(&v))
            .ok_or_else(|| Error::NotInSpan(format!("cycles of slice (p={}, t={})", dst.p, dst.t)))?;
        cols.push(SparseVec::from_dense(&coords));
    }
    Ok(Matrix::from_columns(field, dst.dim, &cols))
}

/// Homology of the classes under the action of `[ē_A]`.
///
/// The square-zero property of the induced differential is checked, not assumed.
pub fn higher_hk(ka: &KoszulAlgebra, a: &GradedBimodule, m: &GradedBimodule, table: &HkTable) -> Result<HigherTable> {
    let dir = table.direction;
    let step = |p: usize| -> Option<usize> {
        match dir {
            Direction::Cohomology => Some(p + 1),
            Direction::Homology => p.checked_sub(1),
        }
    };
    let mut out = Vec::new();
    let mut ts: Vec<i64> = table.slices().map(|s| s.t).collect();
    ts.dedup();
    for t in ts {
        let ps: Vec<usize> = table.slices().filter(|s| s.t == t).map(|s| s.p).collect();
        let mut maps: BTreeMap<usize, Matrix> = BTreeMap::new();
        for &p in &ps {
            let src = table.get(p, t).unwrap();
            let dst = step(p).and_then(|q| table.get(q, t));
            maps.insert(p, induced_map(ka, a, m, src, dst)?);
        }
        for &p in &ps {
            if let Some(q) = step(p) {
                if let (Some(first), Some(second)) = (maps.get(&p), maps.get(&q)) {
                    if first.nrows() == second.ncols() && !second.mul(first).is_zero() {
                        return Err(Error::SquareNotZero(format!("{} at p={p}, t={t}", dir.name())));
                    }
                }
            }
        }
        for &p in &ps {
            let slice = table.get(p, t).unwrap();
            let d_out = &maps[&p];
            // incoming map from the slice that steps into p
            let prev = ps.iter().copied().find(|&q| step(q) == Some(p));
            let d_in = match prev {
                Some(q) => maps[&q].clone(),
                None => Matrix::zero(ka.field(), slice.dim, 0),
            };
            let h = homology(&d_in, d_out)?;
            let neighbour_edge = |q: Option<usize>| q.and_then(|q| table.get(q, t)).is_some_and(|s| s.edge);
            let missing_next = step(p).is_some_and(|q| table.get(q, t).is_none() && !w_zero(ka, q));
            let edge = slice.edge || neighbour_edge(prev) || neighbour_edge(step(p)) || missing_next;
            out.push(HigherSlice { p, t, dim: h.dim, edge });
        }
    }
    Ok(HigherTable { direction: dir, slices: out })
}
