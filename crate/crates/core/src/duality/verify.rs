use rand::Rng;

use crate::bimodule::GradedBimodule;
use crate::calculus::{
    b_k, cap_left, cap_on_k_left, cap_on_k_right, class_product, cup, fundamental_cocycle, higher_hk, hk,
    random_cochain, ClassOp, Cochain, Direction, HkSlice, PairBasis,
};
use crate::error::Result;
use crate::koszul::{KoszulAlgebra, KoszulComplex};
use crate::linalg::{rank, Accumulator, Matrix, SparseVec};
use crate::oracle::binomial;

use super::{k_multiply, phi_tilde, shuffles, SymmetricDuality};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    NotVerified,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Verified => "VERIFIED",
            Verdict::NotVerified => "NOT-VERIFIED",
        }
    }
}

/// Outcome of one family of exact checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    /// Cases where the compared values were nonzero.
    pub nonzero: usize,
    pub passed: bool,
    /// The first counterexample.
    pub failure: Option<String>,
}

struct Tally {
    result: CheckResult,
}

impl Tally {
    fn new(name: impl Into<String>) -> Tally {
        Tally { result: CheckResult { name: name.into(), cases: 0, nonzero: 0, passed: true, failure: None } }
    }

    fn record(&mut self, ok: bool, nonzero: bool, context: impl FnOnce() -> String) {
        self.result.cases += 1;
        self.result.nonzero += usize::from(nonzero);
        if !ok && self.result.passed {
            self.result.passed = false;
            self.result.failure = Some(context());
        }
    }

    fn finish(self) -> CheckResult {
        self.result
    }
}

fn first_failure(checks: &[CheckResult]) -> Option<String> {
    checks
        .iter()
        .find(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.failure.as_deref().unwrap_or("failed")))
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub n: usize,
    pub max_weight: usize,
    pub checks: Vec<CheckResult>,
}

impl DualityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failure(&self) -> Option<String> {
        first_failure(&self.checks)
    }
}

fn basis_cochains(ka: &KoszulAlgebra, m: &GradedBimodule, p: usize, w: usize) -> Vec<Cochain> {
    let basis = PairBasis::cochains(ka, m, p, w);
    (0..basis.dim()).map(|i| basis.cochain(ka, &SparseVec::unit(i, ka.field()))).collect()
}

/// Parity of the permutation sorting `i ++ j` for disjoint increasing lists.
fn merge_sign(i: &[usize], j: &[usize]) -> usize {
    i.iter().map(|x| j.iter().filter(|y| *y < x).count()).sum::<usize>() % 2
}

/// The exterior-algebra model `f ↦ (−1)^{p(p−1)/2} Σ_I f(Ant x_I) e_I`.
fn exterior_model(sd: &SymmetricDuality, ka: &KoszulAlgebra, f: &Cochain) -> Vec<SparseVec> {
    let sign = ka.field().sign(f.p * f.p.saturating_sub(1) / 2);
    sd.values_on_ant(f).iter().map(|v| v.scale(&sign)).collect()
}

/// Exact checks of the duality identities for each coefficient bimodule.
///
/// `modules` should contain `A`, and may add `A^e` or central quotients.
pub fn verify_duality_identities(
    ka: &KoszulAlgebra,
    sd: &SymmetricDuality,
    modules: &[GradedBimodule],
    trials: usize,
    rng: &mut impl Rng,
) -> Result<DualityReport> {
    let n = sd.n();
    let field = ka.field();
    let a = GradedBimodule::algebra(ka.algebra());
    let c = sd.fundamental_class(ka);
    let mut checks = Vec::new();

    let mut t = Tally::new("shuffle count");
    for p in 0..=n {
        let count = shuffles(n, p).len();
        t.record(count == binomial(n, p), true, || format!("p={p}: {count} shuffles"));
    }
    checks.push(t.finish());

    for m in modules {
        let name = m.name();
        let top = m.max_weight();
        let mut routes = Tally::new(format!("theta two routes [{name}]"));
        let mut inverse = Tally::new(format!("theta eta inverse [{name}]"));
        let mut commute = Tally::new(format!("c cap f = (-1)^np f cap c [{name}]"));
        let mut chain_map = Tally::new(format!("theta chain map [{name}]"));
        for p in 0..=n {
            for w in 0..=top {
                let th = sd.theta_matrix(ka, m, p, w)?;
                let et = sd.eta_matrix(ka, m, p, w)?;
                let ok = et.mul(&th) == Matrix::identity(field, th.ncols())
                    && th.mul(&et) == Matrix::identity(field, th.nrows());
                inverse.record(ok, th.ncols() > 0, || format!("p={p} w={w}"));
                for f in basis_cochains(ka, m, p, w) {
                    let cap = sd.theta(ka, m, &f)?;
                    let shuffle = sd.theta_shuffle(ka, &f)?;
                    routes.record(cap == shuffle, !cap.is_zero(), || format!("p={p} w={w}"));
                    let fc = cap_left(ka, m, &f, &a, &c)?.expect("p ≤ n");
                    commute.record(cap == fc.scale(&field.sign(n * p)), !cap.is_zero(), || format!("p={p} w={w}"));
                    if p < n && (w < top || !m.truncated()) {
                        let lhs = sd.theta(ka, m, &b_k(ka, m, &f)?)?;
                        let rhs = crate::calculus::b_hom(ka, m, &cap)?.scale(&field.sign(n));
                        chain_map.record(lhs == rhs, !lhs.is_zero(), || format!("p={p} w={w}"));
                    }
                }
            }
        }
        checks.extend([routes.finish(), inverse.finish(), commute.finish(), chain_map.finish()]);

        let mut right = Tally::new(format!("theta(f cup g) = theta(f) cap g [{name}]"));
        let mut left = Tally::new(format!("theta(g cup f) = (-1)^nq g cap theta(f) [{name}]"));
        let mut done = 0;
        while done < trials {
            let (p, q) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
            let (wf, wg) = (rng.gen_range(0..=top.min(2)), rng.gen_range(0..=1));
            if p + q > n || wf + wg > top {
                continue;
            }
            done += 1;
            let f = random_cochain(ka, m, p, wf, rng);
            let g = random_cochain(ka, &a, q, wg, rng);
            let th_f = sd.theta(ka, m, &f)?;
            let lhs = sd.theta(ka, m, &cup(ka, m, &f, &a, &g)?)?;
            let rhs = crate::calculus::cap_right(ka, m, &th_f, &a, &g)?.expect("q ≤ n − p");
            right.record(lhs == rhs, !lhs.is_zero(), || format!("p={p} q={q} weights {wf},{wg}"));
            let lhs = sd.theta(ka, m, &cup(ka, &a, &g, m, &f)?)?;
            let rhs = cap_left(ka, &a, &g, m, &th_f)?.expect("q ≤ n − p").scale(&field.sign(n * q));
            left.record(lhs == rhs, !lhs.is_zero(), || format!("p={p} q={q} weights {wf},{wg}"));
        }
        checks.extend([right.finish(), left.finish()]);
    }

    let mut model = Tally::new("theta_A multiplicative against A ⊗ exterior algebra");
    let alg = ka.algebra();
    for p in 0..=n {
        for q in 0..=n - p {
            for (wf, wg) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                if wf + wg > ka.max_weight() {
                    continue;
                }
                for i in sd.subsets(p).to_vec() {
                    for j in sd.subsets(q).to_vec() {
                        for x in 0..alg.dim(wf) {
                            for y in 0..alg.dim(wg) {
                                let f = sd.dual_cochain(&i, wf, &SparseVec::unit(x, field));
                                let g = sd.dual_cochain(&j, wg, &SparseVec::unit(y, field));
                                let lhs = exterior_model(sd, ka, &cup(ka, &a, &f, &a, &g)?);
                                let (lf, lg) = (exterior_model(sd, ka, &f), exterior_model(sd, ka, &g));
                                let mut rhs: Vec<Accumulator> = (0..lhs.len()).map(|_| Accumulator::new()).collect();
                                for (ii, u) in sd.subsets(p).iter().zip(&lf) {
                                    for (jj, v) in sd.subsets(q).iter().zip(&lg) {
                                        if u.is_zero() || v.is_zero() || ii.iter().any(|k| jj.contains(k)) {
                                            continue;
                                        }
                                        let mut union: Vec<usize> = ii.iter().chain(jj).copied().collect();
                                        union.sort();
                                        let pos = sd.subsets(p + q).iter().position(|s| *s == union).expect("subset");
                                        let prod = alg.multiply(wf, u, wg, v)?;
                                        rhs[pos].push_scaled(&prod, &field.sign(merge_sign(ii, jj)));
                                    }
                                }
                                let rhs: Vec<SparseVec> = rhs.into_iter().map(|a| a.finish()).collect();
                                let nonzero = lhs.iter().any(|v| !v.is_zero());
                                model.record(lhs == rhs, nonzero, || format!("I={i:?} J={j:?} weights {wf},{wg}"));
                            }
                        }
                    }
                }
            }
        }
    }
    checks.push(model.finish());

    Ok(DualityReport { n, max_weight: ka.max_weight(), checks })
}

#[derive(Clone, Debug)]
pub struct StrongKcReport {
    pub n: usize,
    pub max_weight: usize,
    pub verdict: Verdict,
    pub checks: Vec<CheckResult>,
    pub failure: Option<String>,
    /// `(p, t, dim, edge)` for the slices of `HK^•(A, A^e)`.
    pub hk: Vec<(usize, i64, usize, bool)>,
    /// Shift `s` with `dim HK^n(A, A^e)_t = dim A_{t+s}` on every untruncated slice.
    pub weight_shift: Option<i64>,
}

/// `ũ(α ⊗ ω ⊗ β) = α u(ω) β`, the `A^e`-linear extension of `u` to `K(A)_q`.
fn extend(ka: &KoszulAlgebra, env: &GradedBimodule, k: &KoszulComplex, u: &Cochain, wk: usize, z: &SparseVec) -> Result<SparseVec> {
    let alg = ka.algebra();
    let field = ka.field();
    let slice = k.slice(u.p, wk).expect("slice");
    let mut acc = Accumulator::new();
    for (i, c) in z.iter() {
        let t = slice.triple(*i);
        let s = slice.s(&t);
        let left = env.act_left(alg, t.r, &SparseVec::unit(t.a, field), u.w, &u.values[t.omega])?;
        let both = env.act_right(alg, u.w + t.r, &left, s, &SparseVec::unit(t.b, field))?;
        acc.push_scaled(&both, c);
    }
    Ok(acc.finish())
}

/// The `Ã`-actions on `Hom(W_•, A^e)` transported from the caps on `K(A)`:
/// `(f·u)(x) = (−1)^p ũ(x ⌢ f)` and `(u·f)(x) = ũ(f ⌢ x)`.
fn transported_actions(
    ka: &KoszulAlgebra,
    env: &GradedBimodule,
    k: &KoszulComplex,
    f: &Cochain,
    u: &Cochain,
) -> Result<(Cochain, Cochain)> {
    let field = ka.field();
    let deg = f.p + u.p;
    let slice = k.slice(deg, deg).expect("slice");
    let sign = field.sign(f.p);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for omega in 0..ka.tower().w(deg).dim() {
        let idx = slice.index_of(&crate::koszul::KTriple { r: 0, a: 0, omega, b: 0 });
        let x = match idx {
            Some(i) => SparseVec::unit(i, field),
            None => SparseVec::new(),
        };
        let xf = cap_on_k_right(ka, k, deg, deg, &x, f)?.expect("p ≤ deg");
        let fx = cap_on_k_left(ka, k, f, deg, deg, &x)?.expect("p ≤ deg");
        let wk = u.p + f.w;
        left.push(extend(ka, env, k, u, wk, &xf)?.scale(&sign));
        right.push(extend(ka, env, k, u, wk, &fx)?);
    }
    let w = f.w + u.w;
    Ok((Cochain { p: deg, w, values: left }, Cochain { p: deg, w, values: right }))
}

/// Chain-level verification that `Φ = φ̃ ∘ θ_{A^e}` is an isomorphism of
/// `Hom(W_•, A^e)` onto `K(A)` shifted by `n`, compatible with all structure,
/// together with the vanishing of `HK^p(A, A^e)` for `p ≠ n`.
pub fn strong_kc_verify(ka: &KoszulAlgebra, sd: &SymmetricDuality, trials: usize, rng: &mut impl Rng) -> Result<StrongKcReport> {
    let n = sd.n();
    let t_max = ka.max_weight();
    if t_max < n + 2 {
        return Err(crate::Error::WeightTooSmall { min: n + 2, got: t_max });
    }
    let field = ka.field();
    let alg = ka.algebra();
    let a = GradedBimodule::algebra(alg);
    let env = GradedBimodule::enveloping(alg);
    let k = KoszulComplex::new(ka);
    let phi = |u: &Cochain| -> Result<SparseVec> { phi_tilde(&env, &k, &sd.theta(ka, &env, u)?) };
    let mut checks = Vec::new();

    let mut bij = Tally::new("phi bijective");
    for q in 0..=n {
        for wk in q..=t_max {
            let (p, w) = (n - q, wk - q);
            let cols = basis_cochains(ka, &env, p, w).iter().map(&phi).collect::<Result<Vec<_>>>()?;
            let dim = k.dim(q, wk);
            let ok = cols.len() == dim && rank(&Matrix::from_columns(field, dim, &cols)) == dim;
            bij.record(ok, dim > 0, || format!("K_{q} weight {wk}: source {} target {dim}", cols.len()));
        }
    }
    checks.push(bij.finish());

    let mut chain = Tally::new("phi chain map of degree -n");
    let sign_n = field.sign(n);
    for p in 0..n {
        for w in 0..t_max {
            if w + n - p > t_max {
                continue;
            }
            for u in basis_cochains(ka, &env, p, w) {
                let lhs = phi(&b_k(ka, &env, &u)?)?;
                let rhs = k.d(ka, n - p, w + n - p, &phi(&u)?).scale(&sign_n);
                chain.record(lhs == rhs, !lhs.is_zero(), || format!("p={p} w={w}"));
            }
        }
    }
    checks.push(chain.finish());

    let mut transport = Tally::new("transported actions equal cup");
    let mut act_left = Tally::new("phi(f cup u) = (-1)^(n deg f) f cap phi(u)");
    let mut act_right = Tally::new("phi(u cup f) = phi(u) cap f");
    let mut done = 0;
    while done < trials {
        let (pf, pu) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let (wf, wu) = (rng.gen_range(0..=1), rng.gen_range(0..=2));
        if pf + pu > n || wu + wf + n - pf - pu > t_max || pu + wf > t_max {
            continue;
        }
        done += 1;
        let f = random_cochain(ka, &a, pf, wf, rng);
        let u = random_cochain(ka, &env, pu, wu, rng);
        let fu = cup(ka, &a, &f, &env, &u)?;
        let uf = cup(ka, &env, &u, &a, &f)?;
        let (tl, tr) = transported_actions(ka, &env, &k, &f, &u)?;
        transport.record(tl == fu && tr == uf, !fu.is_zero() || !uf.is_zero(), || format!("deg f={pf} deg u={pu}"));
        let phi_u = phi(&u)?;
        let (q, wk) = (n - pu, wu + n - pu);
        let lhs = phi(&fu)?;
        let rhs = cap_on_k_left(ka, &k, &f, q, wk, &phi_u)?.expect("deg f ≤ q").scale(&field.sign(n * pf));
        act_left.record(lhs == rhs, !lhs.is_zero(), || format!("deg f={pf} deg u={pu} weights {wf},{wu}"));
        let lhs = phi(&uf)?;
        let rhs = cap_on_k_right(ka, &k, q, wk, &phi_u, &f)?.expect("deg f ≤ q");
        act_right.record(lhs == rhs, !lhs.is_zero(), || format!("deg f={pf} deg u={pu} weights {wf},{wu}"));
    }
    checks.extend([transport.finish(), act_left.finish(), act_right.finish()]);

    let mut bimod = Tally::new("phi A-bimodule map for the inner structure");
    let mut done = 0;
    while done < trials {
        let p = rng.gen_range(0..=n);
        let (w, r, s) = (rng.gen_range(0..=2), rng.gen_range(0..=1), rng.gen_range(0..=1));
        if w + r + s + n - p > t_max {
            continue;
        }
        done += 1;
        let u = random_cochain(ka, &env, p, w, rng);
        let alpha = SparseVec::unit(rng.gen_range(0..alg.dim(r)), field);
        let beta = SparseVec::unit(rng.gen_range(0..alg.dim(s)), field);
        let values = u
            .values
            .iter()
            .map(|v| env.inner_action(alg, w, v, r, &alpha, s, &beta))
            .collect::<Result<Vec<_>>>()?;
        let moved = Cochain { p, w: w + r + s, values };
        let lhs = phi(&moved)?;
        let rhs = k_multiply(ka, &k, n - p, w + n - p, &phi(&u)?, r, &alpha, s, &beta)?;
        bimod.record(lhs == rhs, !lhs.is_zero(), || format!("p={p} w={w} |α|={r} |β|={s}"));
    }
    checks.push(bimod.finish());

    let table = hk(ka, &env, Direction::Cohomology)?;
    let mut vanish = Tally::new("HK^p(A, A^e) = 0 for p != n");
    for s in table.slices().filter(|s| !s.edge && s.p != n) {
        vanish.record(s.dim == 0, s.dim > 0, || format!("p={} t={} dim {}", s.p, s.t, s.dim));
    }
    checks.push(vanish.finish());
    let top: Vec<&HkSlice> = table.slices().filter(|s| !s.edge && s.p == n).collect();
    let t_i = t_max as i64;
    let weight_shift = (-t_i..=t_i).find(|&shift| {
        !top.is_empty()
            && top.iter().all(|s| {
                let w = s.t + shift;
                (0..=t_i).contains(&w) && s.dim == alg.dim(w as usize)
            })
    });
    let mut shift = Tally::new("HK^n(A, A^e) matches A under one weight shift");
    shift.record(weight_shift.is_some(), true, || {
        let dims: Vec<String> = top.iter().map(|s| format!("t={}:{}", s.t, s.dim)).collect();
        format!("no consistent shift for {}", dims.join(" "))
    });
    checks.push(shift.finish());

    let verdict = if checks.iter().all(|c| c.passed) { Verdict::Verified } else { Verdict::NotVerified };
    let failure = first_failure(&checks);
    let hk = table.slices().map(|s| (s.p, s.t, s.dim, s.edge)).collect();
    Ok(StrongKcReport { n, max_weight: t_max, verdict, checks, failure, hk, weight_shift })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSlice {
    pub p: usize,
    pub t: i64,
    pub cohomology_dim: usize,
    pub homology_t: i64,
    pub homology_dim: usize,
    pub edge: bool,
    pub bijective: bool,
}

#[derive(Clone, Debug)]
pub struct PoincareReport {
    pub n: usize,
    pub slices: Vec<PoincareSlice>,
    /// `(p, t, dim HK_hi^p(A)_t, dim HK^hi_{n−p}(A)_{t+n})` on untruncated slices.
    pub higher: Vec<(usize, i64, usize, usize)>,
    pub checks: Vec<CheckResult>,
}

impl PoincareReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn classes_of_theta(
    ka: &KoszulAlgebra,
    sd: &SymmetricDuality,
    a: &GradedBimodule,
    src: &HkSlice,
    dst: &HkSlice,
) -> Result<Option<Matrix>> {
    let mut cols = Vec::with_capacity(src.dim);
    for i in 0..src.dim {
        let z = sd.theta(ka, a, &src.basis.cochain(ka, src.representative(i)))?;
        let Some(coords) = dst.basis.flatten(&z.values).and_then(|v| dst.class_of(&v)) else {
            return Ok(None);
        };
        cols.push(SparseVec::from_dense(&coords));
    }
    Ok(Some(Matrix::from_columns(ka.field(), dst.dim, &cols)))
}

/// The map `[f] ↦ [c ⌢ f]` on Koszul classes with coefficients in `A`.
pub fn poincare_duality_on_classes(ka: &KoszulAlgebra, sd: &SymmetricDuality, trials: usize, rng: &mut impl Rng) -> Result<PoincareReport> {
    let n = sd.n() as i64;
    let nu = sd.n();
    let field = ka.field();
    let a = GradedBimodule::algebra(ka.algebra());
    let c = sd.fundamental_class(ka);
    let co = hk(ka, &a, Direction::Cohomology)?;
    let ho = hk(ka, &a, Direction::Homology)?;
    let mut slices = Vec::new();
    let mut bij = Tally::new("[c cap -] bijective on classes");
    let mut commute = Tally::new("c cap a = (-1)^np a cap c on classes");
    for s in co.slices() {
        let Some(dst) = ho.get(nu - s.p, s.t + n) else { continue };
        let edge = s.edge || dst.edge;
        let matrix = classes_of_theta(ka, sd, &a, s, dst)?;
        let bijective = matrix.as_ref().is_some_and(|m| s.dim == dst.dim && rank(m) == s.dim);
        if !edge {
            bij.record(bijective, s.dim > 0, || format!("p={} t={}", s.p, s.t));
            for i in 0..s.dim {
                let f = s.basis.cochain(ka, s.representative(i));
                let left = sd.theta(ka, &a, &f)?;
                let right = cap_left(ka, &a, &f, &a, &c)?.expect("p ≤ n").scale(&field.sign(nu * s.p));
                let ok = match (dst.basis.flatten(&left.values), dst.basis.flatten(&right.values)) {
                    (Some(x), Some(y)) => dst.class_of(&x).is_some() && dst.class_of(&x) == dst.class_of(&y),
                    _ => false,
                };
                commute.record(ok, !left.is_zero(), || format!("p={} t={}", s.p, s.t));
            }
        }
        slices.push(PoincareSlice {
            p: s.p,
            t: s.t,
            cohomology_dim: s.dim,
            homology_t: dst.t,
            homology_dim: dst.dim,
            edge,
            bijective,
        });
    }

    let mut lin_right = Tally::new("[c cap (a cup b)] = [c cap a] cap b");
    let mut lin_left = Tally::new("[c cap (b cup a)] = (-1)^nq b cap [c cap a]");
    let live: Vec<&HkSlice> = co.slices().filter(|s| !s.edge && s.dim > 0).collect();
    if !live.is_empty() {
        for _ in 0..trials {
            let (x, y) = (live[rng.gen_range(0..live.len())], live[rng.gen_range(0..live.len())]);
            let (Some(xy), Some(tx), Some(txy)) = (
                co.get(x.p + y.p, x.t + y.t).filter(|s| !s.edge),
                ho.get(nu.saturating_sub(x.p), x.t + n).filter(|s| !s.edge),
                ho.get(nu.saturating_sub(x.p + y.p), x.t + y.t + n).filter(|s| !s.edge),
            ) else {
                continue;
            };
            if x.p + y.p > nu {
                continue;
            }
            let xc: Vec<_> = (0..x.dim).map(|_| field.from_int(rng.gen_range(-2..=2))).collect();
            let yc: Vec<_> = (0..y.dim).map(|_| field.from_int(rng.gen_range(-2..=2))).collect();
            let (Some(mx), Some(mxy)) = (classes_of_theta(ka, sd, &a, x, tx)?, classes_of_theta(ka, sd, &a, xy, txy)?) else {
                continue;
            };
            let theta_x = mx.mul_vec(&SparseVec::from_dense(&xc)).to_dense(tx.dim, field);
            let prod = class_product(ka, ClassOp::Cup, &a, x, &xc, &a, y, &yc, xy)?;
            let lhs = mxy.mul_vec(&SparseVec::from_dense(&prod)).to_dense(txy.dim, field);
            let rhs = class_product(ka, ClassOp::CapRight, &a, tx, &theta_x, &a, y, &yc, txy)?;
            lin_right.record(lhs == rhs, lhs.iter().any(|v| !v.is_zero()), || format!("({}, {}) × ({}, {})", x.p, x.t, y.p, y.t));
            let prod = class_product(ka, ClassOp::Cup, &a, y, &yc, &a, x, &xc, xy)?;
            let lhs = mxy.mul_vec(&SparseVec::from_dense(&prod)).to_dense(txy.dim, field);
            let rhs: Vec<_> = class_product(ka, ClassOp::CapLeft, &a, y, &yc, &a, tx, &theta_x, txy)?
                .iter()
                .map(|v| v * &field.sign(nu * y.p))
                .collect();
            lin_left.record(lhs == rhs, lhs.iter().any(|v| !v.is_zero()), || format!("({}, {}) × ({}, {})", y.p, y.t, x.p, x.t));
        }
    }

    let mut intertwine = Tally::new("theta(e cup f) = (-1)^n e cap theta(f)");
    let e = fundamental_cocycle(ka);
    for s in co.slices().filter(|s| s.p < nu && s.w < ka.max_weight()) {
        for i in 0..s.dim {
            let f = s.basis.cochain(ka, s.representative(i));
            let lhs = sd.theta(ka, &a, &cup(ka, &a, &e, &a, &f)?)?;
            let rhs = cap_left(ka, &a, &e, &a, &sd.theta(ka, &a, &f)?)?.expect("1 ≤ n − p").scale(&field.sign(nu));
            intertwine.record(lhs == rhs, !lhs.is_zero(), || format!("p={} t={}", s.p, s.t));
        }
    }

    let hi_co = higher_hk(ka, &a, &a, &co)?;
    let hi_ho = higher_hk(ka, &a, &a, &ho)?;
    let mut higher = Vec::new();
    let mut hdims = Tally::new("higher classes correspond");
    for s in hi_co.slices.iter().filter(|s| !s.edge && s.p <= nu) {
        if let Some(d) = hi_ho.get(nu - s.p, s.t + n).filter(|d| !d.edge) {
            higher.push((s.p, s.t, s.dim, d.dim));
            hdims.record(s.dim == d.dim, s.dim > 0, || format!("p={} t={}", s.p, s.t));
        }
    }
    let co_total: usize = hi_co.slices.iter().filter(|s| !s.edge).map(|s| s.dim).sum();
    let ho_total: usize = hi_ho.slices.iter().filter(|s| !s.edge).map(|s| s.dim).sum();
    hdims.record(co_total == 1 && ho_total == 1, true, || format!("totals {co_total} and {ho_total}"));

    let checks = vec![bij.finish(), commute.finish(), lin_right.finish(), lin_left.finish(), intertwine.finish(), hdims.finish()];
    Ok(PoincareReport { n: nu, slices, higher, checks })
}
