use koszul_core::calculus::{fundamental_cocycle, random_cochain, unit_cochain, Chain, PairBasis};
use koszul_core::duality::{
    phi_tilde_matrix, poincare_duality_on_classes, shuffles, strong_kc_verify, verify_duality_identities,
    SymmetricDuality, Verdict,
};
use koszul_core::koszul::{KoszulAlgebra, KoszulComplex};
use koszul_core::linalg::rank;
use koszul_core::random::rng;
use koszul_core::{build_algebra, presets, Field, GradedBimodule, SparseVec};

const Q: Field = Field::Rational;

fn symmetric(field: Field, n: usize, t: usize) -> KoszulAlgebra {
    let (q, r) = presets::symmetric(field, n);
    KoszulAlgebra::new(build_algebra(&q, &r, t).unwrap()).unwrap()
}

fn report_failures(checks: &[koszul_core::duality::CheckResult]) -> Vec<String> {
    checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {:?}", c.name, c.failure)).collect()
}

#[test]
fn fundamental_class_and_small_thetas() {
    let ka = symmetric(Q, 2, 4);
    let sd = SymmetricDuality::new(&ka).unwrap();
    let a = GradedBimodule::algebra(ka.algebra());
    let c = sd.fundamental_class(&ka);
    assert_eq!((c.p, c.w), (2, 0));
    assert_eq!(ka.tower().dim(2), Some(1));
    assert_eq!(sd.theta(&ka, &a, &unit_cochain(&ka)).unwrap(), c);
    assert_eq!(sd.eta(&ka, &c).unwrap(), unit_cochain(&ka));

    // θ(e_A) is ±(x ⊗ y − y ⊗ x) in A_1 ⊗ W_1
    let th = sd.theta(&ka, &a, &fundamental_cocycle(&ka)).unwrap();
    assert_eq!((th.p, th.w), (1, 1));
    let x = SparseVec::unit(0, Q);
    let y = SparseVec::unit(1, Q);
    let expected = Chain { p: 1, w: 1, values: vec![y.neg(), x.clone()] };
    assert!(th == expected || th == expected.neg(), "{th:?}");
}

#[test]
fn non_symmetric_input_is_rejected() {
    let (q, r) = presets::exterior(Q, 2);
    let ka = KoszulAlgebra::new(build_algebra(&q, &r, 3).unwrap()).unwrap();
    assert!(SymmetricDuality::new(&ka).is_err());
}

#[test]
fn shuffle_counts() {
    for n in 0..6 {
        for p in 0..=n {
            assert_eq!(shuffles(n, p).len(), koszul_core::oracle::binomial(n, p));
        }
    }
}

#[test]
fn eta_inverts_theta_on_random_cochains() {
    let mut g = rng(1);
    for n in 2..=3 {
        let ka = symmetric(Q, n, 4);
        let sd = SymmetricDuality::new(&ka).unwrap();
        let a = GradedBimodule::algebra(ka.algebra());
        for k in 0..100 {
            let (p, w) = (k % (n + 1), k % 5);
            let f = random_cochain(&ka, &a, p, w, &mut g);
            let z = sd.theta(&ka, &a, &f).unwrap();
            assert_eq!((z.p, z.w), (n - p, w));
            assert_eq!(sd.eta(&ka, &z).unwrap(), f);
        }
    }
}

#[test]
fn duality_identities_hold() {
    for n in 1..=3 {
        let ka = symmetric(Q, n, 5);
        let sd = SymmetricDuality::new(&ka).unwrap();
        let modules = [
            GradedBimodule::algebra(ka.algebra()),
            GradedBimodule::enveloping(ka.algebra()),
            GradedBimodule::quotient(ka.algebra(), 2).unwrap(),
        ];
        let report = verify_duality_identities(&ka, &sd, &modules, 40, &mut rng(2)).unwrap();
        assert!(report.all_passed(), "n={n}: {:?}", report_failures(&report.checks));
        let env_chain = report.checks.iter().find(|c| c.name == "theta chain map [A^e]").unwrap();
        assert!(env_chain.nonzero > 0, "chain-map identity is nontrivial for A^e");
        let a_chain = report.checks.iter().find(|c| c.name == "theta chain map [A]").unwrap();
        assert_eq!(a_chain.nonzero, 0, "both sides vanish for A");
    }
}

#[test]
fn phi_tilde_is_a_bijective_chain_map() {
    let (q, r) = presets::preprojective(Q, &presets::dynkin_a(3)).unwrap();
    let pre = KoszulAlgebra::new(build_algebra(&q, &r, 4).unwrap()).unwrap();
    for ka in [symmetric(Q, 2, 4), pre] {
        let env = GradedBimodule::enveloping(ka.algebra());
        let k = KoszulComplex::new(&ka);
        for qd in 0..=3 {
            for w in 0..=4 - qd {
                if ka.tower().dim(qd) == Some(0) {
                    continue;
                }
                let m = phi_tilde_matrix(&ka, &env, &k, qd, w).unwrap();
                assert_eq!(m.nrows(), m.ncols());
                assert_eq!(rank(&m), m.ncols());
                if qd >= 1 && w + 1 + qd - 1 <= 4 {
                    // d ∘ φ̃ = φ̃ ∘ b^K
                    let b = koszul_core::calculus::b_hom_matrix(&ka, &env, qd, w).unwrap();
                    let after = phi_tilde_matrix(&ka, &env, &k, qd - 1, w + 1).unwrap();
                    let d = k.differential(&ka, qd, w + qd);
                    assert_eq!(d.mul(&m), after.mul(&b), "q={qd} w={w}");
                }
            }
        }
    }
}

#[test]
fn strong_kc_verified_for_small_symmetric_algebras() {
    for n in 1..=3 {
        let ka = symmetric(Q, n, n + 3);
        let sd = SymmetricDuality::new(&ka).unwrap();
        let report = strong_kc_verify(&ka, &sd, 40, &mut rng(3)).unwrap();
        assert_eq!(report.verdict, Verdict::Verified, "n={n}: {:?}", report.failure);
        assert_eq!(report.weight_shift, Some(n as i64));
    }
}

#[test]
fn injected_sign_fault_is_detected() {
    let ka = symmetric(Q, 2, 5);
    let sd = SymmetricDuality::new(&ka).unwrap().with_fault();
    let report = strong_kc_verify(&ka, &sd, 10, &mut rng(4)).unwrap();
    assert_eq!(report.verdict, Verdict::NotVerified);
    assert!(report.failure.unwrap().contains("p=0"));
}

#[test]
fn poincare_duality_on_classes_holds() {
    for n in 1..=3 {
        let ka = symmetric(Q, n, 5);
        let sd = SymmetricDuality::new(&ka).unwrap();
        let report = poincare_duality_on_classes(&ka, &sd, 60, &mut rng(5)).unwrap();
        assert!(report.all_passed(), "n={n}: {:?}", report_failures(&report.checks));
        assert!(report.slices.iter().filter(|s| !s.edge).all(|s| s.bijective && s.cohomology_dim == s.homology_dim));
    }
}

#[test]
fn duality_over_gf5() {
    let f = Field::Prime(5);
    let ka = symmetric(f, 2, 5);
    let sd = SymmetricDuality::new(&ka).unwrap();
    let modules = [GradedBimodule::algebra(ka.algebra()), GradedBimodule::enveloping(ka.algebra())];
    assert!(verify_duality_identities(&ka, &sd, &modules, 20, &mut rng(6)).unwrap().all_passed());
    assert_eq!(strong_kc_verify(&ka, &sd, 20, &mut rng(6)).unwrap().verdict, Verdict::Verified);
    let a = GradedBimodule::algebra(ka.algebra());
    let basis = PairBasis::cochains(&ka, &a, 1, 1);
    assert_eq!(basis.dim(), 4);
}
