use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use koszul_bench::{preprojective_a, random_matrix, symmetric};
use koszul_core::calculus::{hk, Direction};
use koszul_core::duality::{strong_kc_verify, SymmetricDuality};
use koszul_core::koszul::{check_koszulness, KoszulComplex};
use koszul_core::linalg::rank;
use koszul_core::random::rng;
use koszul_core::{build_algebra, presets, Field, GradedBimodule};

fn linalg(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for field in [Field::Rational, Field::Prime(32003)] {
        let m = random_matrix(field, 60, 60, 0.1, 1);
        g.bench_with_input(BenchmarkId::from_parameter(field), &m, |b, m| b.iter(|| rank(m)));
    }
    g.finish();
}

fn tower(c: &mut Criterion) {
    let mut g = c.benchmark_group("w_tower");
    for n in [3, 4] {
        let (q, r) = presets::symmetric(Field::Rational, n);
        let alg = build_algebra(&q, &r, 5).unwrap();
        g.bench_with_input(BenchmarkId::new("symmetric", n), &alg, |b, alg| {
            b.iter(|| koszul_core::koszul::KoszulAlgebra::new(alg.clone()).unwrap())
        });
    }
    g.finish();
}

fn koszulness(c: &mut Criterion) {
    let ka = preprojective_a(Field::Rational, 4, 6);
    let k = KoszulComplex::new(&ka);
    c.bench_function("koszulness/preprojective_a4_t6", |b| b.iter(|| check_koszulness(&ka, &k).unwrap()));
}

fn hk_tables(c: &mut Criterion) {
    let ka = symmetric(Field::Rational, 3, 5);
    let a = GradedBimodule::algebra(ka.algebra());
    let env = GradedBimodule::enveloping(ka.algebra());
    c.bench_function("hk/symmetric3_a", |b| b.iter(|| hk(&ka, &a, Direction::Cohomology).unwrap()));
    c.bench_function("hk/symmetric3_ae", |b| b.iter(|| hk(&ka, &env, Direction::Cohomology).unwrap()));
}

fn strong_kc(c: &mut Criterion) {
    let mut g = c.benchmark_group("strong_kc");
    g.sample_size(10);
    for n in [2, 3] {
        let ka = symmetric(Field::Rational, n, n + 3);
        let sd = SymmetricDuality::new(&ka).unwrap();
        g.bench_function(BenchmarkId::from_parameter(n), |b| b.iter(|| strong_kc_verify(&ka, &sd, 10, &mut rng(0)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, linalg, tower, koszulness, hk_tables, strong_kc);
criterion_main!(benches);
