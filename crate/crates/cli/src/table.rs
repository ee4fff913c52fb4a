//! Knot tables: CSV with header `name,notation,payload[,expected_det]`.

use std::io::Read;

use anyhow::{bail, Context};
use serde::Deserialize;
use twistspin::codec::{parse_braid, parse_pd, parse_two_bridge};
use twistspin::{Knot, KnotNotation};

use crate::report::Entry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Notation {
    Pd,
    Braid,
    TwoBridge,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct KnotTableRow {
    pub name: String,
    pub notation: String,
    pub payload: String,
    #[serde(default)]
    pub expected_det: Option<u64>,
}

impl KnotTableRow {
    /// The knot, or a one-line reason it was rejected.
    pub fn knot(&self) -> Result<Knot, String> {
        let notation: Notation = serde_json::from_value(serde_json::Value::String(
            self.notation.trim().to_string(),
        ))
        .map_err(|_| format!("unknown notation {:?}", self.notation))?;
        let parsed = match notation {
            Notation::Pd => parse_pd(&self.payload).map(KnotNotation::Diagram),
            Notation::Braid => parse_braid(&self.payload).map(KnotNotation::Diagram),
            Notation::TwoBridge => parse_two_bridge(&self.payload).map(KnotNotation::TwoBridge),
        };
        let parsed = parsed.map_err(|e| e.to_string())?;
        Ok(Knot::new(self.name.clone(), parsed).with_determinant(self.expected_det))
    }
}

/// Reads every row. A malformed header or unreadable CSV is an error for
/// the whole table; a bad knot only marks its own row.
pub fn read_rows(mut input: impl Read) -> anyhow::Result<Vec<KnotTableRow>> {
    let mut text = String::new();
    input.read_to_string(&mut text).context("reading table")?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().context("reading table header")?.clone();
    let names: Vec<&str> = headers.iter().collect();
    if names.len() < 3 || names[..3] != ["name", "notation", "payload"] {
        bail!("table header must start with name,notation,payload; found {}", names.join(","));
    }
    if names.len() > 4 || (names.len() == 4 && names[3] != "expected_det") {
        bail!("optional fourth column must be expected_det; found {}", names.join(","));
    }
    let mut rows = Vec::new();
    for (i, rec) in reader.deserialize().enumerate() {
        let row: KnotTableRow = rec.with_context(|| format!("table row {}", i + 1))?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn entries(rows: &[KnotTableRow]) -> Vec<Entry> {
    rows.iter().map(|r| (r.name.clone(), r.knot())).collect()
}
