//! Quivers and their path bases.
//!
//! A path of length `m` is a word `x_1 … x_m` of arrows with
//! `source(x_i) = target(x_{i+1})`, i.e. arrows compose right to left. Its
//! vertex block is `(target(x_1), source(x_m))`; the idempotent `e_i` is the
//! length-zero path in block `(i, i)`.

use std::collections::HashMap;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, source, target)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Quiver, Error> {
        if vertices.is_empty() {
            return Err(Error::InvalidQuiver("quiver needs at least one vertex".into()));
        }
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex '{v}'")));
            }
        }
        let lookup = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let mut out = Vec::with_capacity(arrows.len());
        let mut names = std::collections::HashSet::new();
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            if !names.insert(name.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow '{name}'")));
            }
            out.push(Arrow { name, source: lookup(s.as_ref())?, target: lookup(t.as_ref())? });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    /// One vertex with `n` loops named by [`loop_names`].
    pub fn single_vertex(n: usize) -> Quiver {
        let names = loop_names(n);
        let arrows: Vec<(String, String, String)> =
            names.into_iter().map(|a| (a, "0".to_string(), "0".to_string())).collect();
        Quiver::new(&["0".to_string()], &arrows).expect("valid quiver")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }
}

/// Loop names for small quivers: `x, y, z, w` then `x1, x2, …`.
pub fn loop_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub arrows: Vec<usize>,
    pub left: usize,
    pub right: usize,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn block(&self) -> (usize, usize) {
        (self.left, self.right)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertices[self.left])
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("")
        }
    }
}

/// Basis of paths of a fixed length, in lexicographic order of arrow indices.
#[derive(Clone, Debug)]
pub struct PathSpace {
    length: usize,
    paths: Vec<Path>,
    index: HashMap<u64, usize>,
    radix: u64,
}

impl PathSpace {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    fn code(&self, p: &Path) -> u64 {
        if p.arrows.is_empty() {
            p.left as u64
        } else {
            p.arrows.iter().fold(0u64, |acc, &a| acc * self.radix + a as u64)
        }
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        if p.arrows.len() != self.length {
            return None;
        }
        self.index.get(&self.code(p)).copied()
    }

    /// Index of the path with the given arrows (length at least one).
    pub fn index_of_arrows(&self, arrows: &[usize]) -> Option<usize> {
        if arrows.len() != self.length || arrows.is_empty() {
            return None;
        }
        let code = arrows.iter().fold(0u64, |acc, &a| acc * self.radix + a as u64);
        self.index.get(&code).copied()
    }
}

/// Path spaces of every length up to a bound, with concatenation.
#[derive(Clone, Debug)]
pub struct PathBasis {
    spaces: Vec<PathSpace>,
    radix: u64,
}

impl PathBasis {
    pub fn new(q: &Quiver, max_length: usize) -> Result<PathBasis, Error> {
        let radix = q.num_arrows().max(1) as u64;
        if radix.checked_pow(max_length as u32).is_none() {
            return Err(Error::TooLarge(format!("paths of length {max_length}")));
        }
        let mut spaces = Vec::with_capacity(max_length + 1);
        let zero: Vec<Path> = (0..q.num_vertices()).map(|i| Path { arrows: vec![], left: i, right: i }).collect();
        spaces.push(Self::indexed(0, zero, radix));
        for m in 1..=max_length {
            let mut paths = Vec::new();
            if m == 1 {
                for (a, arrow) in q.arrows.iter().enumerate() {
                    paths.push(Path { arrows: vec![a], left: arrow.target, right: arrow.source });
                }
            } else {
                for p in &spaces[m - 1].paths {
                    for (a, arrow) in q.arrows.iter().enumerate() {
                        if arrow.target == p.right {
                            let mut arrows = p.arrows.clone();
                            arrows.push(a);
                            paths.push(Path { arrows, left: p.left, right: arrow.source });
                        }
                    }
                }
            }
            spaces.push(Self::indexed(m, paths, radix));
        }
        Ok(PathBasis { spaces, radix })
    }

    fn indexed(length: usize, paths: Vec<Path>, radix: u64) -> PathSpace {
        let mut ps = PathSpace { length, paths, index: HashMap::new(), radix };
        let index = ps.paths.iter().enumerate().map(|(i, p)| (ps.code(p), i)).collect();
        ps.index = index;
        ps
    }

    pub fn max_length(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn space(&self, m: usize) -> &PathSpace {
        &self.spaces[m]
    }

    pub fn path(&self, m: usize, i: usize) -> &Path {
        &self.spaces[m].paths[i]
    }

    /// Index in length `r + s` of `path(r, i) · path(s, j)`, or `None` when the
    /// blocks do not match.
    pub fn concat(&self, r: usize, i: usize, s: usize, j: usize) -> Option<usize> {
        let a = &self.spaces[r].paths[i];
        let b = &self.spaces[s].paths[j];
        if a.right != b.left {
            return None;
        }
        if r == 0 {
            return Some(j);
        }
        if s == 0 {
            return Some(i);
        }
        let target = &self.spaces[r + s];
        let code = self.spaces[r].code(a) * self.radix.pow(s as u32) + self.spaces[s].code(b);
        target.index.get(&code).copied()
    }

    /// Splits `path(r + s, k)` into its first `r` and last `s` arrows.
    pub fn split(&self, r: usize, s: usize, k: usize) -> (usize, usize) {
        let p = &self.spaces[r + s].paths[k];
        let first = if r == 0 {
            p.left
        } else {
            self.spaces[r].index_of_arrows(&p.arrows[..r]).unwrap()
        };
        let second = if s == 0 {
            p.right
        } else {
            self.spaces[s].index_of_arrows(&p.arrows[r..]).unwrap()
        };
        (first, second)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker() -> Quiver {
        Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap()
    }

    #[test]
    fn rejects_bad_quivers() {
        assert!(matches!(Quiver::new::<&str>(&[], &[]), Err(Error::InvalidQuiver(_))));
        assert!(matches!(Quiver::new(&["1"], &[("a", "1", "3")]), Err(Error::UnknownVertex(_))));
        assert!(Quiver::new(&["1"], &[("a", "1", "1"), ("a", "1", "1")]).is_err());
    }

    #[test]
    fn loop_path_counts() {
        let b = PathBasis::new(&Quiver::single_vertex(2), 4).unwrap();
        let dims: Vec<usize> = (0..=4).map(|m| b.space(m).dim()).collect();
        assert_eq!(dims, vec![1, 2, 4, 8, 16]);
        // lexicographic order
        let p = b.path(2, 1);
        assert_eq!(p.arrows, vec![0, 1]);
    }

    #[test]
    fn composition_is_right_to_left() {
        // a: 1 -> 2, c: 2 -> 3. The word "c a" is composable, "a c" is not.
        let q = Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("c", "2", "3")]).unwrap();
        let b = PathBasis::new(&q, 3).unwrap();
        assert_eq!(b.space(2).dim(), 1);
        let p = b.path(2, 0);
        assert_eq!(p.display(&q), "ca");
        assert_eq!(p.block(), (2, 0));
        assert_eq!(b.space(3).dim(), 0);
    }

    #[test]
    fn concat_and_split_roundtrip() {
        let b = PathBasis::new(&Quiver::single_vertex(3), 4).unwrap();
        for k in 0..b.space(4).dim() {
            let (i, j) = b.split(1, 3, k);
            assert_eq!(b.concat(1, i, 3, j), Some(k));
            let (i, j) = b.split(0, 4, k);
            assert_eq!(b.concat(0, i, 4, j), Some(k));
        }
        let kb = PathBasis::new(&kronecker(), 2).unwrap();
        assert_eq!(kb.space(2).dim(), 0);
        assert_eq!(kb.concat(1, 0, 1, 1), None);
        // e_2 · a = a, a · e_2 does not compose
        assert_eq!(kb.concat(0, 1, 1, 0), Some(0));
        assert_eq!(kb.concat(1, 0, 0, 1), None);
    }
}
