//! The algebra description format: a TOML document.
//!
//! ```toml
//! field = "Q"            # or "Fp:5"
//! max_weight = 5
//! vertices = ["1"]
//! arrows = [{ name = "x", source = "1", target = "1" }, { name = "y", source = "1", target = "1" }]
//! relations = [[{ coeff = "1", path = ["x", "y"] }, { coeff = "-1", path = ["y", "x"] }]]
//! ```
//!
//! Instead of `vertices`, `arrows` and `relations` a spec may name a preset:
//! `preset = "symmetric:3"`, `"exterior:2"`, `"free:2"` or `"preprojective:1-2,2-3"`.

use std::fmt;

use koszul_core::{presets, Field, Quiver, Rational, RelationSpace, Scalar};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    Symmetric(usize),
    Exterior(usize),
    Free(usize),
    Preprojective(Vec<(String, String)>),
}

impl Preset {
    pub fn parse(text: &str) -> Result<Preset, String> {
        let (kind, arg) = text.split_once(':').ok_or_else(|| format!("preset '{text}' is not of the form kind:arg"))?;
        let count = || arg.trim().parse::<usize>().map_err(|_| format!("preset '{text}': '{arg}' is not a count"));
        match kind.trim() {
            "symmetric" => Ok(Preset::Symmetric(count()?)),
            "exterior" => Ok(Preset::Exterior(count()?)),
            "free" => Ok(Preset::Free(count()?)),
            "preprojective" => presets::parse_edges(arg).map(Preset::Preprojective).map_err(|e| e.to_string()),
            other => Err(format!("unknown preset kind '{other}'")),
        }
    }

    fn build(&self, field: Field) -> koszul_core::Result<(Quiver, RelationSpace)> {
        match self {
            Preset::Symmetric(n) => Ok(presets::symmetric(field, *n)),
            Preset::Exterior(n) => Ok(presets::exterior(field, *n)),
            Preset::Free(n) => Ok(presets::free(field, *n)),
            Preset::Preprojective(edges) => presets::preprojective(field, edges),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Symmetric(n) => write!(f, "symmetric:{n}"),
            Preset::Exterior(n) => write!(f, "exterior:{n}"),
            Preset::Free(n) => write!(f, "free:{n}"),
            Preset::Preprojective(edges) => {
                let parts: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                write!(f, "preprojective:{}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Preset(Preset),
    Explicit { vertices: Vec<String>, arrows: Vec<ArrowSpec>, relations: Vec<Vec<TermSpec>> },
}

/// A validated algebra description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub field: Field,
    pub max_weight: usize,
    pub body: Body,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    field: String,
    max_weight: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    preset: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    arrows: Vec<ArrowSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    relations: Vec<Vec<TermSpec>>,
}

/// A parse failure; syntax errors carry a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Semantic(String),
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub fn parse_field(text: &str) -> Result<Field, String> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    let p = t
        .strip_prefix("Fp:")
        .ok_or_else(|| format!("field '{t}' is neither Q nor Fp:<p>"))?
        .parse::<u64>()
        .map_err(|_| format!("field '{t}': modulus is not an integer"))?;
    Field::prime(p).ok_or_else(|| format!("field '{t}': modulus {p} is not prime"))
}

pub fn parse_coefficient(field: Field, text: &str) -> Result<Scalar, String> {
    let r = Rational::parse(text).ok_or_else(|| format!("coefficient '{text}' is not an integer or fraction a/b"))?;
    field.from_rational(&r).ok_or_else(|| format!("coefficient '{text}' has a denominator divisible by {}", field.characteristic()))
}

impl AlgebraSpec {
    pub fn preset(field: Field, max_weight: usize, preset: Preset) -> AlgebraSpec {
        AlgebraSpec { field, max_weight, body: Body::Preset(preset) }
    }

    /// Quiver and relation space; fails on unknown names, bad paths or coefficients.
    pub fn build(&self) -> Result<(Quiver, RelationSpace), SpecError> {
        let sem = |e: koszul_core::Error| SpecError::Semantic(e.to_string());
        match &self.body {
            Body::Preset(p) => p.build(self.field).map_err(sem),
            Body::Explicit { vertices, arrows, relations } => {
                let triples: Vec<(String, String, String)> =
                    arrows.iter().map(|a| (a.name.clone(), a.source.clone(), a.target.clone())).collect();
                let q = Quiver::new(vertices, &triples).map_err(sem)?;
                let mut terms = Vec::with_capacity(relations.len());
                for (k, rel) in relations.iter().enumerate() {
                    let mut out = Vec::with_capacity(rel.len());
                    for t in rel {
                        let c = parse_coefficient(self.field, &t.coeff)
                            .map_err(|e| SpecError::Semantic(format!("relation {k}: {e}")))?;
                        out.push((c, t.path.clone()));
                    }
                    terms.push(out);
                }
                let r = RelationSpace::from_terms(self.field, &q, &terms).map_err(sem)?;
                Ok((q, r))
            }
        }
    }

    /// The same algebra written out explicitly, with relations given by the
    /// reduced basis of the relation space.
    pub fn expand(&self) -> Result<AlgebraSpec, SpecError> {
        let (q, r) = self.build()?;
        let paths = koszul_core::PathBasis::new(&q, 2).map_err(|e| SpecError::Semantic(e.to_string()))?;
        let name = |i: usize| q.arrows()[i].name.clone();
        let arrows = q
            .arrows()
            .iter()
            .map(|a| ArrowSpec {
                name: a.name.clone(),
                source: q.vertices()[a.source].clone(),
                target: q.vertices()[a.target].clone(),
            })
            .collect();
        let relations = r
            .space()
            .basis()
            .iter()
            .map(|v| {
                v.iter()
                    .map(|(k, c)| TermSpec {
                        coeff: c.to_string(),
                        path: paths.path(2, *k).arrows.iter().map(|&a| name(a)).collect(),
                    })
                    .collect()
            })
            .collect();
        Ok(AlgebraSpec {
            field: self.field,
            max_weight: self.max_weight,
            body: Body::Explicit { vertices: q.vertices().to_vec(), arrows, relations },
        })
    }

    /// Canonical TOML text.
    pub fn emit(&self) -> String {
        let mut raw = RawSpec {
            field: self.field.to_string(),
            max_weight: self.max_weight,
            preset: None,
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
        };
        match &self.body {
            Body::Preset(p) => raw.preset = Some(p.to_string()),
            Body::Explicit { vertices, arrows, relations } => {
                raw.vertices = vertices.clone();
                raw.arrows = arrows.clone();
                raw.relations = relations.clone();
            }
        }
        toml::to_string(&raw).expect("spec serializes")
    }
}

/// Parses and validates a spec, building the algebra's quiver and relations
/// once so that semantic errors surface here.
pub fn parse_spec(text: &str) -> Result<AlgebraSpec, SpecError> {
    let raw: RawSpec = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| position(text, s.start));
        SpecError::Syntax { line, column, message: e.message().to_string() }
    })?;
    let field = parse_field(&raw.field).map_err(SpecError::Semantic)?;
    let explicit = !raw.vertices.is_empty() || !raw.arrows.is_empty() || !raw.relations.is_empty();
    let body = match (raw.preset, explicit) {
        (Some(_), true) => {
            return Err(SpecError::Semantic("a spec gives either a preset or vertices/arrows/relations, not both".into()))
        }
        (Some(p), false) => Body::Preset(Preset::parse(&p).map_err(SpecError::Semantic)?),
        (None, _) => {
            for (k, rel) in raw.relations.iter().enumerate() {
                if let Some(t) = rel.iter().find(|t| t.path.len() != 2) {
                    return Err(SpecError::Semantic(format!(
                        "relation {k}: path [{}] has length {}, expected 2",
                        t.path.join(", "),
                        t.path.len()
                    )));
                }
            }
            Body::Explicit { vertices: raw.vertices, arrows: raw.arrows, relations: raw.relations }
        }
    };
    let spec = AlgebraSpec { field, max_weight: raw.max_weight, body };
    spec.build()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    const KXY: &str = r#"
field = "Q"
max_weight = 5
vertices = ["1"]
arrows = [{ name = "x", source = "1", target = "1" }, { name = "y", source = "1", target = "1" }]
relations = [[{ coeff = "1", path = ["x", "y"] }, { coeff = "-1", path = ["y", "x"] }]]
"#;

    #[test]
    fn preset_symmetric_two() {
        let s = parse_spec("field = \"Q\"\nmax_weight = 5\npreset = \"symmetric:2\"\n").unwrap();
        let (q, r) = s.build().unwrap();
        assert_eq!((q.num_vertices(), q.num_arrows(), r.dim()), (1, 2, 1));
        assert_eq!(s.max_weight, 5);
    }

    #[test]
    fn explicit_matches_preset() {
        let s = parse_spec(KXY).unwrap();
        let (q, r) = s.build().unwrap();
        let a = koszul_core::build_algebra(&q, &r, 5).unwrap();
        let (pq, pr) = presets::symmetric(Field::Rational, 2);
        let b = koszul_core::build_algebra(&pq, &pr, 5).unwrap();
        assert_eq!(a.dims(), b.dims());
        assert_eq!(a.dims(), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn long_paths_are_rejected() {
        let bad = KXY.replace(r#"path = ["x", "y"]"#, r#"path = ["x", "y", "x"]"#);
        let e = parse_spec(&bad).unwrap_err();
        assert!(matches!(e, SpecError::Semantic(ref m) if m.contains("length 3")), "{e}");
    }

    #[test]
    fn semantic_errors() {
        let unknown = KXY.replace(r#"["y", "x"]"#, r#"["y", "z"]"#);
        assert!(parse_spec(&unknown).unwrap_err().to_string().contains("unknown arrow 'z'"));
        let composite = KXY.replace("\"Q\"", "\"Fp:6\"");
        assert!(parse_spec(&composite).unwrap_err().to_string().contains("not prime"));
        let two = r#"
field = "Q"
max_weight = 3
vertices = ["1", "2"]
arrows = [{ name = "a", source = "1", target = "2" }]
relations = [[{ coeff = "1", path = ["a", "a"] }]]
"#;
        assert!(parse_spec(two).unwrap_err().to_string().contains("not composable"));
        let bad_coeff = KXY.replace("\"-1\"", "\"1/0\"");
        assert!(parse_spec(&bad_coeff).is_err());
    }

    #[test]
    fn syntax_errors_are_positioned() {
        let e = parse_spec("field = \"Q\"\nmax_weight = = 3\n").unwrap_err();
        match e {
            SpecError::Syntax { line, column, .. } => assert_eq!((line, column), (2, 14)),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        assert_eq!(parse_coefficient(Field::Prime(5), "3/2").unwrap(), Field::Prime(5).from_int(4));
        assert!(parse_coefficient(Field::Prime(5), "1/5").is_err());
    }

    #[test]
    fn emit_parse_round_trip() {
        for s in [parse_spec(KXY).unwrap(), AlgebraSpec::preset(Field::Prime(7), 4, Preset::Exterior(3))] {
            assert_eq!(parse_spec(&s.emit()).unwrap(), s);
            let e = s.expand().unwrap();
            assert_eq!(parse_spec(&e.emit()).unwrap(), e);
        }
    }
}
