//! Fixtures shared by the benchmarks under `benches/`.

use koszul_core::koszul::KoszulAlgebra;
use koszul_core::{build_algebra, presets, Field, Matrix};
use rand::Rng;

pub fn symmetric(field: Field, n: usize, t: usize) -> KoszulAlgebra {
    let (q, r) = presets::symmetric(field, n);
    KoszulAlgebra::new(build_algebra(&q, &r, t).expect("preset builds")).expect("tower builds")
}

pub fn preprojective_a(field: Field, n: usize, t: usize) -> KoszulAlgebra {
    let (q, r) = presets::preprojective(field, &presets::dynkin_a(n)).expect("preset builds");
    KoszulAlgebra::new(build_algebra(&q, &r, t).expect("preset builds")).expect("tower builds")
}

/// A seeded random matrix with entries in `-3..=3` and the given density.
pub fn random_matrix(field: Field, rows: usize, cols: usize, density: f64, seed: u64) -> Matrix {
    let mut g = koszul_core::random::rng(seed);
    let dense: Vec<Vec<_>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if g.gen_bool(density) { field.from_int(g.gen_range(-3..=3)) } else { field.zero() })
                .collect()
        })
        .collect();
    Matrix::from_dense(field, &dense, cols)
}
