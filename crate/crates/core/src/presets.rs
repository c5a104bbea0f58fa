//! Standard algebras: polynomial, exterior, free and preprojective.

use crate::algebra::RelationSpace;
use crate::error::{Error, Result};
use crate::linalg::{Field, SparseVec};
use crate::quiver::{PathBasis, Quiver};

fn word_index(paths: &PathBasis, a: usize, b: usize) -> usize {
    paths.space(2).index_of_arrows(&[a, b]).expect("composable")
}

/// `k[x_1, …, x_n]`: one vertex, `n` loops, relations `x_i x_j − x_j x_i`.
pub fn symmetric(field: Field, n: usize) -> (Quiver, RelationSpace) {
    let q = Quiver::single_vertex(n);
    let paths = PathBasis::new(&q, 2).expect("small");
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            rels.push(SparseVec::from_unsorted(vec![
                (word_index(&paths, i, j), field.one()),
                (word_index(&paths, j, i), field.from_int(-1)),
            ]));
        }
    }
    let r = RelationSpace::new(field, &q, &rels).expect("single block");
    (q, r)
}

/// Exterior algebra on `n` generators, from the spanning set `x_i x_i`,
/// `x_i x_j + x_j x_i`.
pub fn exterior(field: Field, n: usize) -> (Quiver, RelationSpace) {
    let q = Quiver::single_vertex(n);
    let paths = PathBasis::new(&q, 2).expect("small");
    let mut rels = Vec::new();
    for i in 0..n {
        rels.push(SparseVec::unit(word_index(&paths, i, i), field));
        for j in i + 1..n {
            rels.push(SparseVec::from_unsorted(vec![
                (word_index(&paths, i, j), field.one()),
                (word_index(&paths, j, i), field.one()),
            ]));
        }
    }
    let r = RelationSpace::new(field, &q, &rels).expect("single block");
    (q, r)
}

/// Free algebra on `n` loops.
pub fn free(field: Field, n: usize) -> (Quiver, RelationSpace) {
    let q = Quiver::single_vertex(n);
    let r = RelationSpace::new(field, &q, &[]).expect("no relations");
    (q, r)
}

/// Preprojective algebra of an undirected graph.
///
/// Edge `k` from `u` to `v` gives arrows `a_k: u → v` and `a_k*: v → u`. The
/// relation at vertex `i` is `Σ_{t(a)=i} a a* − Σ_{s(a)=i} a* a` over the
/// original arrows `a`.
pub fn preprojective<S: AsRef<str>>(field: Field, edges: &[(S, S)]) -> Result<(Quiver, RelationSpace)> {
    if edges.is_empty() {
        return Err(Error::InvalidQuiver("preprojective graph needs an edge".into()));
    }
    let mut vertices: Vec<String> = Vec::new();
    for (u, v) in edges {
        let (u, v) = (u.as_ref(), v.as_ref());
        if u == v {
            return Err(Error::InvalidQuiver(format!("self-loop at '{u}'")));
        }
        for w in [u, v] {
            if !vertices.iter().any(|x| x == w) {
                vertices.push(w.to_string());
            }
        }
    }
    let mut arrows = Vec::new();
    for (k, (u, v)) in edges.iter().enumerate() {
        let (u, v) = (u.as_ref().to_string(), v.as_ref().to_string());
        arrows.push((format!("a{}", k + 1), u.clone(), v.clone()));
        arrows.push((format!("a{}*", k + 1), v, u));
    }
    let q = Quiver::new(&vertices, &arrows)?;
    let paths = PathBasis::new(&q, 2)?;
    let mut rels = Vec::new();
    for i in 0..q.num_vertices() {
        let mut entries = Vec::new();
        for k in 0..edges.len() {
            let (a, star) = (2 * k, 2 * k + 1);
            let arrow = &q.arrows()[a];
            if arrow.target == i {
                entries.push((word_index(&paths, a, star), field.one()));
            }
            if arrow.source == i {
                entries.push((word_index(&paths, star, a), field.from_int(-1)));
            }
        }
        rels.push(SparseVec::from_unsorted(entries));
    }
    let r = RelationSpace::new(field, &q, &rels)?;
    Ok((q, r))
}

/// Parses `"1-2,2-3"` into an edge list.
pub fn parse_edges(text: &str) -> Result<Vec<(String, String)>> {
    text.split(',')
        .map(|e| {
            let (u, v) = e
                .split_once('-')
                .ok_or_else(|| Error::InvalidQuiver(format!("edge '{e}' is not of the form u-v")))?;
            let (u, v) = (u.trim(), v.trim());
            if u.is_empty() || v.is_empty() {
                return Err(Error::InvalidQuiver(format!("edge '{e}' has an empty endpoint")));
            }
            Ok((u.to_string(), v.to_string()))
        })
        .collect()
}

/// Dynkin graph `A_n` as a path `1-2-…-n`.
pub fn dynkin_a(n: usize) -> Vec<(String, String)> {
    (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn symmetric_relation_dims() {
        assert_eq!(symmetric(Q, 1).1.dim(), 0);
        assert_eq!(symmetric(Q, 2).1.dim(), 1);
        assert_eq!(symmetric(Q, 3).1.dim(), 3);
    }

    #[test]
    fn exterior_relation_dims() {
        assert_eq!(exterior(Q, 1).1.dim(), 1);
        assert_eq!(exterior(Q, 2).1.dim(), 3);
        // in characteristic two x y + y x = x y - y x, still independent
        assert_eq!(exterior(Field::Prime(2), 2).1.dim(), 3);
    }

    #[test]
    fn preprojective_relations() {
        let (q, r) = preprojective(Q, &dynkin_a(2)).unwrap();
        assert_eq!((q.num_vertices(), q.num_arrows(), r.dim()), (2, 2, 2));
        let (q, r) = preprojective(Q, &dynkin_a(3)).unwrap();
        assert_eq!(r.dim(), 3);
        let paths = PathBasis::new(&q, 2).unwrap();
        for v in r.space().basis() {
            for (k, _) in v.iter() {
                let (i, j) = paths.path(2, *k).block();
                assert_eq!(i, j);
            }
        }
    }

    #[test]
    fn preprojective_rejects_loops() {
        assert!(preprojective(Q, &[("1", "1")]).is_err());
        assert!(preprojective::<&str>(Q, &[]).is_err());
    }

    #[test]
    fn edge_parsing() {
        assert_eq!(parse_edges("1-2, 2-3").unwrap(), dynkin_a(3));
        assert!(parse_edges("12").is_err());
    }
}
