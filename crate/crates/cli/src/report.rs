//! Reports and their JSON, CSV and text renderings.

use std::fmt::Write as _;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(n) => s.serialize_i64(*n),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Text(t) => s.serialize_str(t),
        }
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Cell {
        Cell::Int(n as i64)
    }
}

impl From<i64> for Cell {
    fn from(n: i64) -> Cell {
        Cell::Int(n)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Cell {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Cell {
        Cell::Text(s)
    }
}

/// A named table; JSON renders each row as an object keyed by column in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&'static str]) -> Table {
        Table { name: name.into(), columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

struct Row<'a>(&'a [&'static str], &'a [Cell]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

struct Tables<'a>(&'a [Table]);

impl Serialize for Tables<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for t in self.0 {
            let rows: Vec<Row> = t.rows.iter().map(|r| Row(&t.columns, r)).collect();
            m.serialize_entry(&t.name, &rows)?;
        }
        m.end()
    }
}

/// What a command concluded; decides the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Computed,
    Failed,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub field: String,
    pub max_weight: usize,
    pub seed: u64,
    pub verdict: Option<String>,
    /// Scalar summaries (`key`, `value`), values as exact strings.
    pub summary: Vec<(String, Cell)>,
    pub tables: Vec<Table>,
    pub outcome: Outcome,
    pub seconds: Option<f64>,
}

impl Report {
    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }
}

struct Summary<'a>(&'a [(String, Cell)]);

impl Serialize for Summary<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Report", 10)?;
        st.serialize_field("schema_version", SCHEMA_VERSION)?;
        st.serialize_field("command", &self.command)?;
        st.serialize_field("input_digest", &self.input_digest)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("max_weight", &self.max_weight)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("summary", &Summary(&self.summary))?;
        st.serialize_field("tables", &Tables(&self.tables))?;
        if let Some(t) = self.seconds {
            st.serialize_field("timing_seconds", &t)?;
        }
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn header(r: &Report) -> Vec<(String, String)> {
    let mut out = vec![
        ("schema_version".to_string(), SCHEMA_VERSION.to_string()),
        ("command".into(), r.command.clone()),
        ("input_digest".into(), r.input_digest.clone()),
        ("field".into(), r.field.clone()),
        ("max_weight".into(), r.max_weight.to_string()),
        ("seed".into(), r.seed.to_string()),
        ("verdict".into(), r.verdict.clone().unwrap_or_default()),
    ];
    out.extend(r.summary.iter().map(|(k, v)| (k.clone(), v.render())));
    if let Some(t) = r.seconds {
        out.push(("timing_seconds".into(), t.to_string()));
    }
    out
}

fn csv_line(fields: &[String]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(fields).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// CSV: a `key,value` block for the header, then one block per table headed
/// by a `table,<name>` line. Blocks are separated by blank lines.
fn emit_csv(r: &Report) -> String {
    let mut out = csv_line(&["key".into(), "value".into()]);
    for (k, v) in header(r) {
        out += &csv_line(&[k, v]);
    }
    for t in &r.tables {
        out.push('\n');
        out += &csv_line(&["table".into(), t.name.clone()]);
        out += &csv_line(&t.columns.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        for row in &t.rows {
            out += &csv_line(&row.iter().map(Cell::render).collect::<Vec<_>>());
        }
    }
    out
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    let pairs = header(r);
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &pairs {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    for t in &r.tables {
        let _ = writeln!(out, "\n[{}] {} rows", t.name, t.rows.len());
        let cells: Vec<Vec<String>> = t.rows.iter().map(|row| row.iter().map(Cell::render).collect()).collect();
        let widths: Vec<usize> = (0..t.columns.len())
            .map(|j| cells.iter().map(|row| row[j].len()).chain([t.columns[j].len()]).max().unwrap_or(0))
            .collect();
        let line = |row: Vec<&str>| {
            let parts: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            parts.join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(t.columns.clone()));
        for row in &cells {
            let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
        }
    }
    out
}

pub fn emit(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
        Format::Csv => emit_csv(r),
        Format::Text => emit_text(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(rows: usize) -> Report {
        let mut t = Table::new("hk", &["p", "t", "dim", "edge"]);
        for i in 0..rows {
            t.push(vec![i.into(), (i as i64 - 1).into(), (2 * i).into(), (i == 0).into()]);
        }
        Report {
            command: "hk".into(),
            input_digest: "00".into(),
            field: "Q".into(),
            max_weight: 3,
            seed: 1,
            verdict: None,
            summary: vec![("lambda".into(), "-1/2".into())],
            tables: vec![t],
            outcome: Outcome::Computed,
            seconds: None,
        }
    }

    #[test]
    fn empty_table_is_a_valid_document() {
        let r = sample(0);
        let v: serde_json::Value = serde_json::from_str(&emit(&r, Format::Json)).unwrap();
        assert_eq!(v["tables"]["hk"], serde_json::json!([]));
        assert!(emit(&r, Format::Csv).ends_with("table,hk\np,t,dim,edge\n"));
    }

    #[test]
    fn hk_rows_have_the_documented_keys_in_order() {
        let json = emit(&sample(2), Format::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let row = v["tables"]["hk"][1].as_object().unwrap();
        let keys: Vec<_> = row.keys().cloned().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(sorted, ["dim", "edge", "p", "t"]);
        assert!(json.find("\"p\"").unwrap() < json.find("\"edge\"").unwrap());
        assert_eq!(v["summary"]["lambda"], "-1/2");
        assert!(v.get("timing_seconds").is_none());
    }

    #[test]
    fn timing_only_when_requested() {
        let mut r = sample(1);
        r.seconds = Some(0.5);
        assert!(emit(&r, Format::Json).contains("timing_seconds"));
        assert!(emit(&r, Format::Text).contains("timing_seconds"));
    }
}
