//! Duality for the polynomial algebra `S(V)`: the fundamental class `c`, the
//! isomorphism `θ_M(f) = c ⌢ f` with its inverse `η_M`, and the comparison map
//! `φ̃: A^e ⊗ W_• → K(A)`.

mod verify;

pub use verify::{
    poincare_duality_on_classes, strong_kc_verify, verify_duality_identities, CheckResult, DualityReport,
    PoincareReport, PoincareSlice, StrongKcReport, Verdict,
};

use crate::algebra::RelationSpace;
use crate::bimodule::{BimoduleKind, GradedBimodule};
use crate::calculus::{cap_right, Chain, Cochain, PairBasis};
use crate::error::{Error, Result};
use crate::koszul::{antisymmetric_basis, subsets, KTriple, KoszulAlgebra, KoszulComplex};
use crate::linalg::{Accumulator, Matrix, Scalar, SparseVec, Subspace};
use crate::quiver::PathBasis;

/// Sign of the shuffle that lists `i` before its complement `j`, both increasing.
pub fn shuffle_sign(i: &[usize]) -> usize {
    i.iter().enumerate().map(|(k, &x)| x - k).sum::<usize>() % 2
}

/// The `(p, n − p)` shuffles as pairs of index lists.
pub fn shuffles(n: usize, p: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    subsets(n, p)
        .into_iter()
        .map(|i| {
            let j = (0..n).filter(|x| !i.contains(x)).collect();
            (i, j)
        })
        .collect()
}

/// Duality data for `A = S(V)`, `n = dim V`.
#[derive(Clone, Debug)]
pub struct SymmetricDuality {
    n: usize,
    /// The `W_n` basis vector equals `λ · Ant(x_1 ⊗ … ⊗ x_n)`.
    lambda: Scalar,
    /// `ant[p][I]`: coordinates of `Ant(x_I)` in the `W_p` basis.
    ant: Vec<Vec<SparseVec>>,
    /// `inv[p][a]`: coordinates of basis vector `w_a` of `W_p` over the `Ant(x_I)`.
    inv: Vec<Vec<SparseVec>>,
    subsets: Vec<Vec<Vec<usize>>>,
    fault: bool,
}

fn commutator_relations(ka: &KoszulAlgebra) -> Result<RelationSpace> {
    let alg = ka.algebra();
    let field = ka.field();
    let n = alg.num_arrows();
    let paths = PathBasis::new(alg.quiver(), 2)?;
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let ij = paths.space(2).index_of_arrows(&[i, j]).expect("loops compose");
            let ji = paths.space(2).index_of_arrows(&[j, i]).expect("loops compose");
            rels.push(SparseVec::from_unsorted(vec![(ij, field.one()), (ji, field.from_int(-1))]));
        }
    }
    RelationSpace::new(field, alg.quiver(), &rels)
}

impl SymmetricDuality {
    pub fn new(ka: &KoszulAlgebra) -> Result<SymmetricDuality> {
        let alg = ka.algebra();
        if alg.num_vertices() != 1 || alg.relations().space() != commutator_relations(ka)?.space() {
            return Err(Error::Unsupported("duality maps for the symmetric algebra only".into()));
        }
        let n = alg.num_arrows();
        if ka.max_weight() < n {
            return Err(Error::WeightTooSmall { min: n, got: ka.max_weight() });
        }
        let field = ka.field();
        let tower = ka.tower();
        let mut ant = Vec::with_capacity(n + 1);
        let mut inv: Vec<Vec<SparseVec>> = Vec::with_capacity(n + 1);
        let mut subs = Vec::with_capacity(n + 1);
        for p in 0..=n {
            let space = tower.w(p).space();
            let d = space.dim();
            let rows: Vec<SparseVec> = antisymmetric_basis(alg, p)?
                .iter()
                .map(|v| {
                    space
                        .coordinates(v)
                        .map(|c| SparseVec::from_dense(&c))
                        .ok_or_else(|| Error::NotInSpan(format!("Ant_{p} in W_{p}")))
                })
                .collect::<Result<_>>()?;
            if rows.len() != d {
                return Err(Error::Verification(format!("W_{p} has dimension {d}, expected {}", rows.len())));
            }
            // rref of [C | I] is [I | C^{-1}]
            let augmented: Vec<SparseVec> = rows
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    let mut e: Vec<(usize, Scalar)> = r.iter().map(|(i, c)| (*i, c.clone())).collect();
                    e.push((d + k, field.one()));
                    SparseVec::from_unsorted(e)
                })
                .collect();
            let rr = Subspace::span(field, 2 * d, &augmented);
            if rr.pivots().iter().copied().ne(0..d) {
                return Err(Error::Verification(format!("Ant_{p} is not a basis of W_{p}")));
            }
            inv.push(rr.basis().iter().map(|v| v.reindex(|i| i.checked_sub(d))).collect());
            ant.push(rows);
            subs.push(subsets(n, p));
        }
        let lambda = inv[n][0].get(0).cloned().unwrap_or_else(|| field.zero());
        Ok(SymmetricDuality { n, lambda, ant, inv, subsets: subs, fault: false })
    }

    /// The same maps with the sign of `θ` flipped in positive degree, for
    /// negative tests of the verifiers.
    pub fn with_fault(mut self) -> SymmetricDuality {
        self.fault = true;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The scalar `λ` with `w_n = λ · Ant(x_1 ⊗ … ⊗ x_n)`.
    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn fault(&self) -> bool {
        self.fault
    }

    /// `c = 1 ⊗ w`, with `w` the basis vector of `W_n`.
    pub fn fundamental_class(&self, ka: &KoszulAlgebra) -> Chain {
        Chain { p: self.n, w: 0, values: vec![ka.algebra().unit()] }
    }

    /// `θ_M(f) = c ⌢ f`.
    pub fn theta(&self, ka: &KoszulAlgebra, m: &GradedBimodule, f: &Cochain) -> Result<Chain> {
        let a = GradedBimodule::algebra(ka.algebra());
        let c = self.fundamental_class(ka);
        let z = cap_right(ka, &a, &c, m, f)?.ok_or_else(|| Error::Unsupported(format!("θ on degree {} > n", f.p)))?;
        Ok(if self.fault && f.p >= 1 { z.neg() } else { z })
    }

    /// `θ_M(f) = (−1)^{np} λ Σ_{(I, J)} sgn(I, J) f(Ant x_I) ⊗ Ant x_J` over the shuffles.
    pub fn theta_shuffle(&self, ka: &KoszulAlgebra, f: &Cochain) -> Result<Chain> {
        let (n, p) = (self.n, f.p);
        if p > n {
            return Err(Error::Unsupported(format!("θ on degree {p} > n")));
        }
        let field = ka.field();
        let mut out: Vec<Accumulator> = (0..ka.tower().w(n - p).dim()).map(|_| Accumulator::new()).collect();
        let base = &field.sign(n * p) * &self.lambda;
        for (k, (i, j)) in shuffles(n, p).iter().enumerate() {
            debug_assert_eq!(&self.subsets[p][k], i);
            let jk = self.subsets[n - p].iter().position(|s| s == j).expect("complement is a subset");
            let mut fi = Accumulator::new();
            for (a, c) in self.ant[p][k].iter() {
                fi.push_scaled(&f.values[*a], c);
            }
            let fi = fi.finish();
            let sign = &base * &field.sign(shuffle_sign(i));
            for (b, c) in self.ant[n - p][jk].iter() {
                out[*b].push_scaled(&fi, &(&sign * c));
            }
        }
        Ok(Chain { p: n - p, w: f.w, values: out.into_iter().map(|a| a.finish()).collect() })
    }

    /// `η_M(m ⊗ Ant x_J) = (−1)^{np} λ^{-1} sgn(I, J) f_{I, m}` with `I` the
    /// complement of `J` and `f_{I, m}(Ant x_{I'}) = δ_{I I'} m`.
    pub fn eta(&self, ka: &KoszulAlgebra, z: &Chain) -> Result<Cochain> {
        let n = self.n;
        if z.p > n {
            return Err(Error::Unsupported(format!("η on degree {} > n", z.p)));
        }
        let p = n - z.p;
        let field = ka.field();
        let base = &field.sign(n * p) * &self.lambda.inv();
        let mut out: Vec<Accumulator> = (0..ka.tower().w(p).dim()).map(|_| Accumulator::new()).collect();
        for (b, m) in z.values.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            // w_b = Σ_J inv[b][J] Ant x_J
            for (jk, cj) in self.inv[z.p][b].iter() {
                let j = &self.subsets[z.p][*jk];
                let i: Vec<usize> = (0..n).filter(|x| !j.contains(x)).collect();
                let ik = self.subsets[p].iter().position(|s| *s == i).expect("complement is a subset");
                let coeff = &(&base * cj) * &field.sign(shuffle_sign(&i));
                // f_{I,m}(w_a) = inv[a][I] m
                for (a, row) in self.inv[p].iter().enumerate() {
                    if let Some(c) = row.get(ik) {
                        out[a].push_scaled(m, &(&coeff * c));
                    }
                }
            }
        }
        Ok(Cochain { p, w: z.w, values: out.into_iter().map(|a| a.finish()).collect() })
    }

    /// The cochain `f_{I, m}` with `f(Ant x_I) = m` and zero on the other `Ant x_{I'}`.
    pub fn dual_cochain(&self, subset: &[usize], w: usize, m: &SparseVec) -> Cochain {
        let p = subset.len();
        let ik = self.subsets[p].iter().position(|s| s == subset).expect("increasing subset");
        let values = self.inv[p].iter().map(|row| row.get(ik).map_or_else(SparseVec::new, |c| m.scale(c))).collect();
        Cochain { p, w, values }
    }

    /// `f(Ant x_I)` for every increasing `I`.
    pub fn values_on_ant(&self, f: &Cochain) -> Vec<SparseVec> {
        self.ant[f.p]
            .iter()
            .map(|row| {
                let mut acc = Accumulator::new();
                for (a, c) in row.iter() {
                    acc.push_scaled(&f.values[*a], c);
                }
                acc.finish()
            })
            .collect()
    }

    pub fn subsets(&self, p: usize) -> &[Vec<usize>] {
        &self.subsets[p]
    }

    /// Matrix of `θ_M` from `Hom(W_p, M_w)` to `M_w ⊗ W_{n−p}`.
    pub fn theta_matrix(&self, ka: &KoszulAlgebra, m: &GradedBimodule, p: usize, w: usize) -> Result<Matrix> {
        let src = PairBasis::cochains(ka, m, p, w);
        let dst = PairBasis::chains(ka, m, self.n - p, w);
        let field = ka.field();
        let cols = (0..src.dim())
            .map(|i| {
                let z = self.theta(ka, m, &src.cochain(ka, &SparseVec::unit(i, field)))?;
                dst.flatten(&z.values).ok_or_else(|| Error::Verification("θ broke block compatibility".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(field, dst.dim(), &cols))
    }

    /// Matrix of `η_M` from `M_w ⊗ W_{n−p}` to `Hom(W_p, M_w)`.
    pub fn eta_matrix(&self, ka: &KoszulAlgebra, m: &GradedBimodule, p: usize, w: usize) -> Result<Matrix> {
        let src = PairBasis::chains(ka, m, self.n - p, w);
        let dst = PairBasis::cochains(ka, m, p, w);
        let field = ka.field();
        let cols = (0..src.dim())
            .map(|i| {
                let f = self.eta(ka, &src.chain(ka, &SparseVec::unit(i, field)))?;
                dst.flatten(&f.values).ok_or_else(|| Error::Verification("η broke block compatibility".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(field, dst.dim(), &cols))
    }
}

/// `φ̃((α ⊗ β) ⊗ y) = β ⊗ y ⊗ α`, from `A^e ⊗ W_q` in coefficient weight `w` to
/// `K(A)_q` in internal weight `w + q`.
pub fn phi_tilde(env: &GradedBimodule, k: &KoszulComplex, z: &Chain) -> Result<SparseVec> {
    if *env.kind() != BimoduleKind::Enveloping {
        return Err(Error::Unsupported("φ̃ on chains with coefficients in A^e".into()));
    }
    let (q, w) = (z.p, z.w);
    let slice = k
        .slice(q, w + q)
        .ok_or(Error::TruncationExceeded { requested: w + q, max: k.max_weight() })?;
    let mut acc = Accumulator::new();
    for (omega, m) in z.values.iter().enumerate() {
        for (idx, c) in m.iter() {
            let (r, i, j) = env.pair(w, *idx);
            let t = KTriple { r: w - r, a: j, omega, b: i };
            let pos = slice
                .index_of(&t)
                .ok_or_else(|| Error::Verification(format!("φ̃ image outside K(A)_{q} in weight {}", w + q)))?;
            acc.push(pos, c.clone());
        }
    }
    Ok(acc.finish())
}

/// Matrix of `φ̃` on the `(q, w)` slice.
pub fn phi_tilde_matrix(ka: &KoszulAlgebra, env: &GradedBimodule, k: &KoszulComplex, q: usize, w: usize) -> Result<Matrix> {
    let src = PairBasis::chains(ka, env, q, w);
    let field = ka.field();
    let cols = (0..src.dim())
        .map(|i| phi_tilde(env, k, &src.chain(ka, &SparseVec::unit(i, field))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(field, k.dim(q, w + q), &cols))
}

/// `α z β` on `K(A)_q`, for `α ∈ A_r` and `β ∈ A_s`.
#[allow(clippy::too_many_arguments)]
pub fn k_multiply(
    ka: &KoszulAlgebra,
    k: &KoszulComplex,
    q: usize,
    w: usize,
    z: &SparseVec,
    r: usize,
    alpha: &SparseVec,
    s: usize,
    beta: &SparseVec,
) -> Result<SparseVec> {
    let alg = ka.algebra();
    let target = w + r + s;
    let (Some(src), Some(dst)) = (k.slice(q, w), k.slice(q, target)) else {
        return Err(Error::TruncationExceeded { requested: target, max: k.max_weight() });
    };
    let field = ka.field();
    let mut acc = Accumulator::new();
    for (i, c) in z.iter() {
        let t = src.triple(*i);
        let left = alg.multiply(r, alpha, t.r, &SparseVec::unit(t.a, field))?;
        let right = alg.multiply(src.s(&t), &SparseVec::unit(t.b, field), s, beta)?;
        for (a2, x) in left.iter() {
            for (b2, y) in right.iter() {
                let pos = dst.index_of(&KTriple { r: t.r + r, a: *a2, omega: t.omega, b: *b2 }).expect("triple");
                acc.push(pos, &(c * x) * y);
            }
        }
    }
    Ok(acc.finish())
}
