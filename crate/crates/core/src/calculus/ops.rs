use crate::bimodule::{BimoduleKind, GradedBimodule};
use crate::error::{Error, Result};
use crate::koszul::{KTriple, KoszulAlgebra, KoszulComplex};
use crate::linalg::{Accumulator, Matrix, SparseVec};

use super::{Chain, Cochain, PairBasis};

/// Product of a value in `lm_{w1}` with a value in `rm_{w2}`; one side must be `A`.
pub fn product(
    ka: &KoszulAlgebra,
    lm: &GradedBimodule,
    w1: usize,
    x: &SparseVec,
    rm: &GradedBimodule,
    w2: usize,
    y: &SparseVec,
) -> Result<SparseVec> {
    let alg = ka.algebra();
    if *lm.kind() == BimoduleKind::Algebra {
        rm.act_left(alg, w1, x, w2, y)
    } else if *rm.kind() == BimoduleKind::Algebra {
        lm.act_right(alg, w1, x, w2, y)
    } else {
        Err(Error::Unsupported(format!("a product {} × {} with an A side", lm.name(), rm.name())))
    }
}

fn require_w(ka: &KoszulAlgebra, p: usize) -> Result<()> {
    if p > ka.tower().max_p() {
        Err(Error::TruncationExceeded { requested: p, max: ka.tower().max_p() })
    } else {
        Ok(())
    }
}

/// `1_Ã`: the 0-cochain `e_i ↦ e_i`.
pub fn unit_cochain(ka: &KoszulAlgebra) -> Cochain {
    let f = ka.field();
    Cochain { p: 0, w: 0, values: (0..ka.algebra().num_vertices()).map(|i| SparseVec::unit(i, f)).collect() }
}

pub fn zero_cochain(ka: &KoszulAlgebra, p: usize, w: usize) -> Cochain {
    Cochain::zero(ka, p, w)
}

/// The fundamental 1-cocycle `e_A: V → A_1`, the identity on arrows.
pub fn fundamental_cocycle(ka: &KoszulAlgebra) -> Cochain {
    let f = ka.field();
    Cochain { p: 1, w: 1, values: (0..ka.algebra().num_arrows()).map(|x| SparseVec::unit(x, f)).collect() }
}

/// `b_K(f)(x_1…x_{p+1}) = f(x_1…x_p) x_{p+1} − (−1)^p x_1 f(x_2…x_{p+1})`.
pub fn b_k(ka: &KoszulAlgebra, m: &GradedBimodule, f: &Cochain) -> Result<Cochain> {
    let p = f.p;
    require_w(ka, p + 1)?;
    let tower = ka.tower();
    let field = ka.field();
    let sign = -field.sign(p);
    let mut values = Vec::with_capacity(tower.w(p + 1).dim());
    for k in 0..tower.w(p + 1).dim() {
        let mut acc = Accumulator::new();
        for (v, x, c) in tower.decompose(p, 1, k) {
            if !f.values[*v].is_zero() {
                acc.push_scaled(&m.arrow_right(f.w, &f.values[*v], *x)?, c);
            }
        }
        for (x, v, c) in tower.decompose(1, p, k) {
            if !f.values[*v].is_zero() {
                acc.push_scaled(&m.arrow_left(*x, f.w, &f.values[*v])?, &(c * &sign));
            }
        }
        values.push(acc.finish());
    }
    Ok(Cochain { p: p + 1, w: f.w + 1, values })
}

/// `b^K(m ⊗ x_1…x_p) = m x_1 ⊗ x_2…x_p + (−1)^p x_p m ⊗ x_1…x_{p−1}`, i.e.
/// `−[e_A, z]` for the cap commutator `[f, z] = f ⌢ z − (−1)^{pq} z ⌢ f`.
pub fn b_hom(ka: &KoszulAlgebra, m: &GradedBimodule, z: &Chain) -> Result<Chain> {
    let p = z.p;
    if p == 0 {
        return Err(Error::Unsupported("b^K on chains of degree at least one".into()));
    }
    let tower = ka.tower();
    let sign = ka.field().sign(p);
    let mut out: Vec<Accumulator> = (0..tower.w(p - 1).dim()).map(|_| Accumulator::new()).collect();
    for (k, val) in z.values.iter().enumerate() {
        if val.is_zero() {
            continue;
        }
        for (x, v, c) in tower.decompose(1, p - 1, k) {
            out[*v].push_scaled(&m.arrow_right(z.w, val, *x)?, c);
        }
        for (v, x, c) in tower.decompose(p - 1, 1, k) {
            out[*v].push_scaled(&m.arrow_left(*x, z.w, val)?, &(c * &sign));
        }
    }
    Ok(Chain { p: p - 1, w: z.w + 1, values: out.into_iter().map(|a| a.finish()).collect() })
}

/// `(f ⌣ g)(ω) = (−1)^{pq} Σ f(w_a) g(w_b)` over the decomposition of `ω` in `W_p ⊗ W_q`.
pub fn cup(ka: &KoszulAlgebra, fm: &GradedBimodule, f: &Cochain, gm: &GradedBimodule, g: &Cochain) -> Result<Cochain> {
    let (p, q) = (f.p, g.p);
    require_w(ka, p + q)?;
    let tower = ka.tower();
    let sign = ka.field().sign(p * q);
    let mut values = Vec::with_capacity(tower.w(p + q).dim());
    for k in 0..tower.w(p + q).dim() {
        let mut acc = Accumulator::new();
        for (a, b, c) in tower.decompose(p, q, k) {
            let (x, y) = (&f.values[*a], &g.values[*b]);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc.push_scaled(&product(ka, fm, f.w, x, gm, g.w, y)?, &(c * &sign));
        }
        values.push(acc.finish());
    }
    Ok(Cochain { p: p + q, w: f.w + g.w, values })
}

/// `z ⌢ f = (−1)^{pq} (m · f(x_1…x_p)) ⊗ x_{p+1}…x_q`; `None` when `p > q`.
pub fn cap_right(ka: &KoszulAlgebra, zm: &GradedBimodule, z: &Chain, fm: &GradedBimodule, f: &Cochain) -> Result<Option<Chain>> {
    let (p, q) = (f.p, z.p);
    if p > q {
        return Ok(None);
    }
    let tower = ka.tower();
    let sign = ka.field().sign(p * q);
    let mut out: Vec<Accumulator> = (0..tower.w(q - p).dim()).map(|_| Accumulator::new()).collect();
    for (k, m) in z.values.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        for (a, b, c) in tower.decompose(p, q - p, k) {
            let y = &f.values[*a];
            if y.is_zero() {
                continue;
            }
            out[*b].push_scaled(&product(ka, zm, z.w, m, fm, f.w, y)?, &(c * &sign));
        }
    }
    Ok(Some(Chain { p: q - p, w: z.w + f.w, values: out.into_iter().map(|a| a.finish()).collect() }))
}

/// `f ⌢ z = (−1)^{(q−p)p} (f(x_{q−p+1}…x_q) · m) ⊗ x_1…x_{q−p}`; `None` when `p > q`.
pub fn cap_left(ka: &KoszulAlgebra, fm: &GradedBimodule, f: &Cochain, zm: &GradedBimodule, z: &Chain) -> Result<Option<Chain>> {
    let (p, q) = (f.p, z.p);
    if p > q {
        return Ok(None);
    }
    let tower = ka.tower();
    let sign = ka.field().sign((q - p) * p);
    let mut out: Vec<Accumulator> = (0..tower.w(q - p).dim()).map(|_| Accumulator::new()).collect();
    for (k, m) in z.values.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        for (a, b, c) in tower.decompose(q - p, p, k) {
            let y = &f.values[*b];
            if y.is_zero() {
                continue;
            }
            out[*a].push_scaled(&product(ka, fm, f.w, y, zm, z.w, m)?, &(c * &sign));
        }
    }
    Ok(Some(Chain { p: q - p, w: z.w + f.w, values: out.into_iter().map(|a| a.finish()).collect() }))
}

/// `f ⌢ (α ⊗ x_1…x_q ⊗ β) = (−1)^{(q−p)p} α ⊗ x_1…x_{q−p} ⊗ f(x_{q−p+1}…x_q) β`
/// for `z ∈ K(A)_q` of internal weight `w` and `f` with coefficients in `A`.
/// Lands in `K(A)_{q−p}` of weight `w − p + f.w`; `None` when `p > q`.
pub fn cap_on_k_left(ka: &KoszulAlgebra, k: &KoszulComplex, f: &Cochain, q: usize, w: usize, z: &SparseVec) -> Result<Option<SparseVec>> {
    let p = f.p;
    if p > q {
        return Ok(None);
    }
    let alg = ka.algebra();
    let target_w = w - p + f.w;
    if target_w > k.max_weight() {
        return Err(Error::TruncationExceeded { requested: target_w, max: k.max_weight() });
    }
    let (src, dst) = (k.slice(q, w).expect("slice"), k.slice(q - p, target_w).expect("slice"));
    let tower = ka.tower();
    let sign = ka.field().sign((q - p) * p);
    let mut acc = Accumulator::new();
    for (i, c0) in z.iter() {
        let t = src.triple(*i);
        let s = src.s(&t);
        for (a, b, c) in tower.decompose(q - p, p, t.omega) {
            let y = &f.values[*b];
            if y.is_zero() {
                continue;
            }
            let fb = alg.multiply(f.w, y, s, &SparseVec::unit(t.b, ka.field()))?;
            let coeff = &(c0 * c) * &sign;
            for (k2, v) in fb.iter() {
                let idx = dst.index_of(&KTriple { r: t.r, a: t.a, omega: *a, b: *k2 }).expect("triple");
                acc.push(idx, &coeff * v);
            }
        }
    }
    Ok(Some(acc.finish()))
}

/// `(α ⊗ x_1…x_q ⊗ β) ⌢ f = (−1)^{pq} α f(x_1…x_p) ⊗ x_{p+1}…x_q ⊗ β`.
pub fn cap_on_k_right(ka: &KoszulAlgebra, k: &KoszulComplex, q: usize, w: usize, z: &SparseVec, f: &Cochain) -> Result<Option<SparseVec>> {
    let p = f.p;
    if p > q {
        return Ok(None);
    }
    let alg = ka.algebra();
    let target_w = w - p + f.w;
    if target_w > k.max_weight() {
        return Err(Error::TruncationExceeded { requested: target_w, max: k.max_weight() });
    }
    let (src, dst) = (k.slice(q, w).expect("slice"), k.slice(q - p, target_w).expect("slice"));
    let tower = ka.tower();
    let sign = ka.field().sign(p * q);
    let mut acc = Accumulator::new();
    for (i, c0) in z.iter() {
        let t = src.triple(*i);
        for (a, b, c) in tower.decompose(p, q - p, t.omega) {
            let y = &f.values[*a];
            if y.is_zero() {
                continue;
            }
            let af = alg.multiply(t.r, &SparseVec::unit(t.a, ka.field()), f.w, y)?;
            let coeff = &(c0 * c) * &sign;
            for (k2, v) in af.iter() {
                let idx = dst.index_of(&KTriple { r: t.r + f.w, a: *k2, omega: *b, b: t.b }).expect("triple");
                acc.push(idx, &coeff * v);
            }
        }
    }
    Ok(Some(acc.finish()))
}

/// Matrix of `b_K` from bidegree `(p, w)` to `(p + 1, w + 1)`.
pub fn b_k_matrix(ka: &KoszulAlgebra, m: &GradedBimodule, p: usize, w: usize) -> Result<Matrix> {
    let src = PairBasis::cochains(ka, m, p, w);
    let dst = PairBasis::cochains(ka, m, p + 1, w + 1);
    let field = ka.field();
    let mut cols = Vec::with_capacity(src.dim());
    for i in 0..src.dim() {
        let f = src.cochain(ka, &SparseVec::unit(i, field));
        let g = b_k(ka, m, &f)?;
        cols.push(dst.flatten(&g.values).ok_or_else(|| Error::Verification("b_K broke block compatibility".into()))?);
    }
    Ok(Matrix::from_columns(field, dst.dim(), &cols))
}

/// Matrix of `b^K` from bidegree `(p, w)` to `(p − 1, w + 1)`.
pub fn b_hom_matrix(ka: &KoszulAlgebra, m: &GradedBimodule, p: usize, w: usize) -> Result<Matrix> {
    let src = PairBasis::chains(ka, m, p, w);
    let dst = PairBasis::chains(ka, m, p - 1, w + 1);
    let field = ka.field();
    let mut cols = Vec::with_capacity(src.dim());
    for i in 0..src.dim() {
        let z = src.chain(ka, &SparseVec::unit(i, field));
        let g = b_hom(ka, m, &z)?;
        cols.push(dst.flatten(&g.values).ok_or_else(|| Error::Verification("b^K broke block compatibility".into()))?);
    }
    Ok(Matrix::from_columns(field, dst.dim(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::linalg::Field;
    use crate::presets;

    const Q: Field = Field::Rational;

    fn poly(n: usize, t: usize) -> (KoszulAlgebra, GradedBimodule) {
        let (q, r) = presets::symmetric(Q, n);
        let ka = KoszulAlgebra::new(build_algebra(&q, &r, t).unwrap()).unwrap();
        let m = GradedBimodule::algebra(ka.algebra());
        (ka, m)
    }

    #[test]
    fn e_a_is_a_cocycle() {
        let (ka, a) = poly(2, 4);
        let e = fundamental_cocycle(&ka);
        assert!(b_k(&ka, &a, &e).unwrap().is_zero());
        let (q, r) = presets::preprojective(Q, &presets::dynkin_a(3)).unwrap();
        let ka = KoszulAlgebra::new(build_algebra(&q, &r, 4).unwrap()).unwrap();
        let a = GradedBimodule::algebra(ka.algebra());
        assert!(b_k(&ka, &a, &fundamental_cocycle(&ka)).unwrap().is_zero());
    }

    #[test]
    fn b_k_on_zero_cochain() {
        // b_K(a)(x) = a x − x a in k[x,y] vanishes; in the free algebra it does not.
        let (ka, a) = poly(2, 4);
        let x = ka.algebra().element_from_word(&["x"]).unwrap();
        let f = Cochain { p: 0, w: 1, values: vec![x.clone()] };
        assert!(b_k(&ka, &a, &f).unwrap().is_zero());

        let (q, r) = presets::free(Q, 2);
        let kf = KoszulAlgebra::new(build_algebra(&q, &r, 3).unwrap()).unwrap();
        let af = GradedBimodule::algebra(kf.algebra());
        let x = kf.algebra().element_from_word(&["x"]).unwrap();
        let g = b_k(&kf, &af, &Cochain { p: 0, w: 1, values: vec![x] }).unwrap();
        let xy = kf.algebra().element_from_word(&["x", "y"]).unwrap();
        let yx = kf.algebra().element_from_word(&["y", "x"]).unwrap();
        assert!(g.values[0].is_zero());
        assert_eq!(g.values[1], xy.sub(&yx));
    }

    #[test]
    fn b_hom_degree_one() {
        // free algebra: b^K(y ⊗ x) = yx − xy
        let (q, r) = presets::free(Q, 2);
        let ka = KoszulAlgebra::new(build_algebra(&q, &r, 3).unwrap()).unwrap();
        let a = GradedBimodule::algebra(ka.algebra());
        let y = ka.algebra().element_from_word(&["y"]).unwrap();
        let z = Chain { p: 1, w: 1, values: vec![y, SparseVec::new()] };
        let out = b_hom(&ka, &a, &z).unwrap();
        let xy = ka.algebra().element_from_word(&["x", "y"]).unwrap();
        let yx = ka.algebra().element_from_word(&["y", "x"]).unwrap();
        assert_eq!(out.values[0], yx.sub(&xy));
    }

    #[test]
    fn cup_examples() {
        let (ka, a) = poly(2, 4);
        let e = fundamental_cocycle(&ka);
        assert!(cup(&ka, &a, &e, &a, &e).unwrap().is_zero());
        let one = unit_cochain(&ka);
        assert_eq!(cup(&ka, &a, &one, &a, &e).unwrap(), e);
        assert_eq!(cup(&ka, &a, &e, &a, &one).unwrap(), e);
    }

    #[test]
    fn caps_by_unit() {
        let (ka, a) = poly(2, 4);
        let one = unit_cochain(&ka);
        let x = ka.algebra().element_from_word(&["x"]).unwrap();
        let z = Chain { p: 1, w: 1, values: vec![x.clone(), x] };
        assert_eq!(cap_right(&ka, &a, &z, &a, &one).unwrap().unwrap(), z);
        assert_eq!(cap_left(&ka, &a, &one, &a, &z).unwrap().unwrap(), z);
        let e = fundamental_cocycle(&ka);
        let c = Chain { p: 0, w: 0, values: vec![SparseVec::unit(0, Q)] };
        assert!(cap_right(&ka, &a, &c, &a, &e).unwrap().is_none());
    }
}
