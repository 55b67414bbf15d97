//! The distance-matrix file format.
//!
//! A JSON document with fields `points` (the number of points `m`) and `d`
//! (an array of `m(m-1)/2` strings, the upper triangle in row-major order
//! `(0,1), (0,2), ..., (m-2, m-1)`). Each entry is an integer, a decimal,
//! or a `p/q` fraction, parsed exactly. The optional field `squared`
//! (default `false`) marks the entries as squared distances, which admits
//! configurations whose distances are irrational while their squares are
//! rational.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{parse_rational, RationalParseError};

use super::{DistanceMatrix, GeometryError};

#[derive(Debug, Error)]
pub enum DmParseError {
    #[error("invalid distance-matrix document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("entry {index} (`{text}`): {source}")]
    Entry {
        index: usize,
        text: String,
        source: RationalParseError,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Serialize, Deserialize)]
struct DmDocument {
    points: usize,
    d: Vec<String>,
    #[serde(default)]
    squared: bool,
}

/// Parses the JSON distance-matrix document.
pub fn parse_distance_matrix(text: &str) -> Result<DistanceMatrix, DmParseError> {
    let doc: DmDocument = serde_json::from_str(text)?;
    let mut entries = Vec::with_capacity(doc.d.len());
    for (index, raw) in doc.d.iter().enumerate() {
        let value = parse_rational(raw).map_err(|source| DmParseError::Entry {
            index,
            text: raw.clone(),
            source,
        })?;
        entries.push(value);
    }
    if doc.squared {
        Ok(DistanceMatrix::from_squared_distances(doc.points, entries)?)
    } else {
        Ok(DistanceMatrix::from_distances(doc.points, entries)?)
    }
}

/// Writes the matrix back out in squared form (which is always exact).
pub fn write_distance_matrix(dm: &DistanceMatrix) -> String {
    let doc = DmDocument {
        points: dm.points(),
        d: dm.squared_entries().map(|x| x.to_string()).collect(),
        squared: true,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}
