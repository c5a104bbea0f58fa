use koszul_core::calculus::{
    b_hom_matrix, b_k, b_k_matrix, class_product, cup, higher_hk, hk, random_cochain, ClassOp, Direction, HkTable,
};
use koszul_core::koszul::KoszulAlgebra;
use koszul_core::oracle::{binomial, monomials};
use koszul_core::random::rng;
use koszul_core::{build_algebra, presets, Field, GradedBimodule, Scalar};
use rand::Rng;

const Q: Field = Field::Rational;

fn symmetric(n: usize, t: usize) -> KoszulAlgebra {
    let (q, r) = presets::symmetric(Q, n);
    KoszulAlgebra::new(build_algebra(&q, &r, t).unwrap()).unwrap()
}

fn preprojective_a3(t: usize) -> KoszulAlgebra {
    let (q, r) = presets::preprojective(Q, &presets::dynkin_a(3)).unwrap();
    KoszulAlgebra::new(build_algebra(&q, &r, t).unwrap()).unwrap()
}

#[test]
fn symmetric_differentials_vanish() {
    for n in 1..=3 {
        let ka = symmetric(n, 6);
        let a = GradedBimodule::algebra(ka.algebra());
        let central = GradedBimodule::quotient(ka.algebra(), 3).unwrap();
        for m in [&a, &central] {
            let top = m.max_weight();
            for p in 0..=n {
                for w in 0..top {
                    assert!(b_k_matrix(&ka, m, p, w).unwrap().is_zero(), "n={n} b_K p={p} w={w}");
                    if p >= 1 {
                        assert!(b_hom_matrix(&ka, m, p, w).unwrap().is_zero(), "n={n} b^K p={p} w={w}");
                    }
                }
            }
        }
    }
}

#[test]
fn symmetric_dims_match_counting_formula() {
    for n in 1..=3 {
        let ka = symmetric(n, 6);
        let a = GradedBimodule::algebra(ka.algebra());
        for dir in [Direction::Homology, Direction::Cohomology] {
            let table = hk(&ka, &a, dir).unwrap();
            let mut seen = 0;
            for s in table.slices() {
                assert_eq!(s.dim, binomial(n, s.p) * monomials(n, s.w), "n={n} {dir:?} p={} t={}", s.p, s.t);
                seen += 1;
            }
            assert_eq!(seen, (n + 1) * 7);
        }
    }
}

#[test]
fn polynomial_ring_in_one_variable() {
    let ka = symmetric(1, 6);
    let a = GradedBimodule::algebra(ka.algebra());
    let table = hk(&ka, &a, Direction::Cohomology).unwrap();
    for w in 0..=6i64 {
        assert_eq!(table.get(0, w).unwrap().dim, 1);
        assert_eq!(table.get(1, w - 1).unwrap().dim, 1);
    }
    assert!(table.slices().all(|s| s.p <= 1));
}

fn assert_stable(small: &HkTable, large: &HkTable) {
    let mut compared = 0;
    for s in small.slices().filter(|s| !s.edge) {
        let other = large.get(s.p, s.t).expect("slice present at larger truncation");
        assert_eq!(s.dim, other.dim, "p={} t={}", s.p, s.t);
        compared += 1;
    }
    assert!(compared > 0);
}

#[test]
fn non_edge_slices_are_truncation_independent() {
    for (small, large) in [(preprojective_a3(4), preprojective_a3(5)), (symmetric(2, 4), symmetric(2, 5))] {
        for dir in [Direction::Cohomology, Direction::Homology] {
            let ms = GradedBimodule::algebra(small.algebra());
            let ml = GradedBimodule::algebra(large.algebra());
            assert_stable(&hk(&small, &ms, dir).unwrap(), &hk(&large, &ml, dir).unwrap());
            let es = GradedBimodule::enveloping(small.algebra());
            let el = GradedBimodule::enveloping(large.algebra());
            assert_stable(&hk(&small, &es, dir).unwrap(), &hk(&large, &el, dir).unwrap());
        }
    }
}

#[test]
fn enveloping_cohomology_concentrated_in_top_degree() {
    for n in 1..=2 {
        let ka = symmetric(n, 4);
        let env = GradedBimodule::enveloping(ka.algebra());
        let table = hk(&ka, &env, Direction::Cohomology).unwrap();
        for s in table.slices().filter(|s| !s.edge && s.p != n) {
            assert_eq!(s.dim, 0, "n={n} p={} t={}", s.p, s.t);
        }
        assert!(table.slices().any(|s| !s.edge && s.p == n && s.dim > 0));
    }
}

#[test]
fn higher_tables_of_symmetric_algebras() {
    for n in 1..=3 {
        let ka = symmetric(n, 5);
        let a = GradedBimodule::algebra(ka.algebra());
        let co = higher_hk(&ka, &a, &a, &hk(&ka, &a, Direction::Cohomology).unwrap()).unwrap();
        let total: usize = co.slices.iter().filter(|s| !s.edge).map(|s| s.dim).sum();
        assert_eq!(total, 1, "n={n}");
        assert!(co.slices.iter().filter(|s| !s.edge && s.dim > 0).all(|s| s.p == n));
        let ho = higher_hk(&ka, &a, &a, &hk(&ka, &a, Direction::Homology).unwrap()).unwrap();
        let total: usize = ho.slices.iter().filter(|s| !s.edge).map(|s| s.dim).sum();
        assert_eq!(total, 1, "n={n}");
        assert!(ho.slices.iter().filter(|s| !s.edge && s.dim > 0).all(|s| s.p == 0));
    }
}

fn random_coords(g: &mut impl Rng, dim: usize) -> Vec<Scalar> {
    (0..dim).map(|_| Q.from_int(g.gen_range(-2..=2))).collect()
}

#[test]
fn class_products_are_associative_and_unital() {
    let ka = preprojective_a3(5);
    let a = GradedBimodule::algebra(ka.algebra());
    let table = hk(&ka, &a, Direction::Cohomology).unwrap();
    let live: Vec<_> = table.slices().filter(|s| !s.edge && s.dim > 0).collect();
    assert!(live.len() >= 2);
    let unit = table.get(0, 0).unwrap();
    let unit_coords = unit.class_of_cochain(&koszul_core::calculus::unit_cochain(&ka)).unwrap();
    let mut g = rng(17);
    for s in &live {
        let x = random_coords(&mut g, s.dim);
        assert_eq!(class_product(&ka, ClassOp::Cup, &a, unit, &unit_coords, &a, s, &x, s).unwrap(), x);
        assert_eq!(class_product(&ka, ClassOp::Cup, &a, s, &x, &a, unit, &unit_coords, s).unwrap(), x);
    }
    let mut checked = 0;
    for _ in 0..200 {
        let pick: Vec<_> = (0..3).map(|_| live[g.gen_range(0..live.len())]).collect();
        let at = |i: usize, j: usize| {
            let (p, t) = (pick[i..=j].iter().map(|s| s.p).sum(), pick[i..=j].iter().map(|s| s.t).sum());
            table.get(p, t).filter(|s| !s.edge)
        };
        let (Some(ab), Some(bc), Some(abc)) = (at(0, 1), at(1, 2), at(0, 2)) else { continue };
        let xs: Vec<_> = pick.iter().map(|s| random_coords(&mut g, s.dim)).collect();
        let cup = |l: &koszul_core::calculus::HkSlice, x: &[Scalar], r: &koszul_core::calculus::HkSlice, y: &[Scalar], t| {
            class_product(&ka, ClassOp::Cup, &a, l, x, &a, r, y, t).unwrap()
        };
        let left = cup(ab, &cup(pick[0], &xs[0], pick[1], &xs[1], ab), pick[2], &xs[2], abc);
        let right = cup(pick[0], &xs[0], bc, &cup(pick[1], &xs[1], pick[2], &xs[2], bc), abc);
        assert_eq!(left, right);
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn class_products_ignore_coboundary_perturbations() {
    let ka = preprojective_a3(5);
    let a = GradedBimodule::algebra(ka.algebra());
    let table = hk(&ka, &a, Direction::Cohomology).unwrap();
    let mut g = rng(23);
    let mut checked = 0;
    for s in table.slices().filter(|s| !s.edge && s.dim > 0 && s.p >= 1 && s.w >= 1) {
        for r in table.slices().filter(|r| !r.edge && r.dim > 0) {
            let Some(target) = table.get(s.p + r.p, s.t + r.t).filter(|t| !t.edge) else { continue };
            let x = random_coords(&mut g, s.dim);
            let y = random_coords(&mut g, r.dim);
            let expected = class_product(&ka, ClassOp::Cup, &a, s, &x, &a, r, &y, target).unwrap();
            let h = random_cochain(&ka, &a, s.p - 1, s.w - 1, &mut g);
            let f = s.basis.cochain(&ka, &s.combine(&x)).add(&b_k(&ka, &a, &h).unwrap());
            let gcochain = r.basis.cochain(&ka, &r.combine(&y));
            let product = cup(&ka, &a, &f, &a, &gcochain).unwrap();
            assert_eq!(target.class_of_cochain(&product).unwrap(), expected);
            checked += 1;
        }
    }
    assert!(checked > 0);
}
