//! Seeded generators for test inputs.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::RelationSpace;
use crate::error::Result;
use crate::linalg::{Field, SparseVec};
use crate::quiver::{PathBasis, Quiver};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A two-vertex quiver with arrows `a, b: 1 → 2`, `c: 2 → 1`, `d: 2 → 2`
/// and `relations` random relations, each supported on one block.
pub fn random_two_vertex(field: Field, relations: usize, rng: &mut impl Rng) -> Result<(Quiver, RelationSpace)> {
    let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "2", "1"), ("d", "2", "2")])?;
    let paths = PathBasis::new(&q, 2)?;
    let space = paths.space(2);
    let mut blocks: Vec<(usize, usize)> = space.paths().iter().map(|p| p.block()).collect();
    blocks.sort();
    blocks.dedup();
    let mut rels = Vec::with_capacity(relations);
    while rels.len() < relations {
        let block = *blocks.choose(rng).expect("quiver has length-two paths");
        let entries: Vec<_> = space
            .paths()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.block() == block)
            .filter_map(|(i, _)| {
                let c: i64 = rng.gen_range(-2..=2);
                (c != 0).then(|| (i, field.from_int(c)))
            })
            .collect();
        let v = SparseVec::from_unsorted(entries);
        if !v.is_zero() {
            rels.push(v);
        }
    }
    Ok((q.clone(), RelationSpace::new(field, &q, &rels)?))
}
