//! Relation documents in JSON and CSV.
//!
//! JSON: `{"universe": ["x", "y"], "tnorm": "godel", "matrix": [[1, 0.5], [0.25, 1]]}`
//! with `tnorm` optional. CSV: the first record is the label list, the
//! following records are matrix rows in universe order.
//!
//! Degrees are written in their shortest round-tripping decimal form, so a
//! document read back reproduces the same doubles.

use std::fs;
use std::path::Path;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::relation::{FuzzyRelation, Universe};
use crate::tnorm::TNormId;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDocument {
    pub universe: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tnorm: Option<TNormId>,
    pub matrix: Vec<Vec<f64>>,
}

impl RelationDocument {
    pub fn from_relation(r: &FuzzyRelation, tnorm: Option<TNormId>) -> Self {
        RelationDocument {
            universe: r.universe().labels().to_vec(),
            tnorm,
            matrix: r.rows(),
        }
    }

    pub fn to_relation(&self) -> Result<FuzzyRelation> {
        let universe = Universe::new(self.universe.iter().cloned())?;
        FuzzyRelation::new(universe, &self.matrix)
    }
}

impl Serialize for FuzzyRelation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FuzzyRelation", 2)?;
        s.serialize_field("universe", self.universe().labels())?;
        s.serialize_field("matrix", &self.rows())?;
        s.end()
    }
}

pub fn parse_json(text: &str) -> Result<RelationDocument> {
    let doc: RelationDocument = serde_json::from_str(text)?;
    // validate shape and range eagerly so errors name the offending field
    doc.to_relation()?;
    Ok(doc)
}

pub fn to_json(doc: &RelationDocument) -> Result<String> {
    Ok(serde_json::to_string_pretty(doc)?)
}

pub fn parse_csv(text: &str) -> Result<RelationDocument> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let universe: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let mut matrix = Vec::with_capacity(universe.len());
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let values = record
            .iter()
            .enumerate()
            .map(|(col, cell)| {
                cell.parse::<f64>().map_err(|_| {
                    Error::Parse(format!(
                        "row {} column {}: `{cell}` is not a number",
                        row + 1,
                        col + 1
                    ))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        matrix.push(values);
    }
    let doc = RelationDocument {
        universe,
        tnorm: None,
        matrix,
    };
    doc.to_relation()?;
    Ok(doc)
}

pub fn to_csv(r: &FuzzyRelation) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(r.universe().labels())?;
    for row in r.rows() {
        writer.write_record(row.iter().map(|v| v.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses either format; JSON is recognised by a leading `{`.
pub fn parse_document(text: &str) -> Result<RelationDocument> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_csv(text)
    }
}

pub fn read_document(path: impl AsRef<Path>) -> Result<RelationDocument> {
    let text = fs::read_to_string(path)?;
    parse_document(&text)
}
