//! Model files: a matrix pair as JSON with exact rational-string entries.

use crate::numerics::{parse_rational, ParseRationalError, RationalMatrix};
use crate::operators::{OperatorError, SqsoPair};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("cannot read model file: {0}")]
    Io(#[from] std::io::Error),
    #[error("model file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("matrix {name} must be {m}x{m}, row {row} has {len} entries")]
    Shape {
        name: &'static str,
        m: usize,
        row: usize,
        len: usize,
    },
    #[error("matrix {name} must have {m} rows, found {rows}")]
    RowCount {
        name: &'static str,
        m: usize,
        rows: usize,
    },
    #[error("bad entry in matrix {name} at ({row},{col}): {source}")]
    Entry {
        name: &'static str,
        row: usize,
        col: usize,
        source: ParseRationalError,
    },
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// Serialized form of a pair. Entries are rational literals (`"1/3"`,
/// `"0.25"`, `"2"`) so exact values survive the round trip; decimal
/// floats would corrupt thirds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    pub m: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, ModelError> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    /// Parses and validates the pair.
    pub fn to_pair(&self) -> Result<SqsoPair, ModelError> {
        let a = self.parse_matrix("A", &self.a)?;
        let b = self.parse_matrix("B", &self.b)?;
        Ok(SqsoPair::validate(a, b)?)
    }

    fn parse_matrix(
        &self,
        name: &'static str,
        rows: &[Vec<String>],
    ) -> Result<RationalMatrix, ModelError> {
        if rows.len() != self.m {
            return Err(ModelError::RowCount {
                name,
                m: self.m,
                rows: rows.len(),
            });
        }
        let mut parsed = Vec::with_capacity(self.m);
        for (row_idx, row) in rows.iter().enumerate() {
            if row.len() != self.m {
                return Err(ModelError::Shape {
                    name,
                    m: self.m,
                    row: row_idx,
                    len: row.len(),
                });
            }
            let mut out = Vec::with_capacity(self.m);
            for (col_idx, text) in row.iter().enumerate() {
                out.push(parse_rational(text).map_err(|source| ModelError::Entry {
                    name,
                    row: row_idx,
                    col: col_idx,
                    source,
                })?);
            }
            parsed.push(out);
        }
        RationalMatrix::from_rows(parsed)
            .map_err(|e| ModelError::Operator(OperatorError::Matrix(e)))
    }

    /// Canonical echo of a validated pair (entries re-rendered in lowest
    /// terms, so `"8/6"` echoes as `"4/3"`).
    pub fn echo(pair: &SqsoPair, label: Option<String>) -> Self {
        let render = |m: &RationalMatrix| {
            (0..m.rows())
                .map(|i| m.row(i).iter().map(|v| v.to_string()).collect())
                .collect()
        };
        Self {
            label,
            m: pair.m(),
            a: render(pair.matrix_a()),
            b: render(pair.matrix_b()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::Admissibility;

    const MODEL: &str = r#"{
        "m": 3,
        "A": [["1","0","0"],["1/3","1/2","1/4"],["2/3","1/4","1/8"]],
        "B": [["1","1","2/3"],["1","11/12","5/6"],["1","5/6","1"]]
    }"#;

    #[test]
    fn parses_and_validates() {
        let model = ModelFile::from_json(MODEL).unwrap();
        let pair = model.to_pair().unwrap();
        assert_eq!(pair.admissibility(), Admissibility::Strict);
        assert_eq!(pair.m(), 3);
    }

    #[test]
    fn echo_is_canonical() {
        let model = ModelFile::from_json(
            r#"{"m":2,"A":[["8/6","-0/5"],["1","0"]],"B":[["0.75","0.75"],["3/4","3/4"]]}"#,
        )
        .unwrap();
        let pair = model.to_pair().unwrap();
        let echo = ModelFile::echo(&pair, None);
        assert_eq!(echo.a[0], vec!["4/3".to_string(), "0".to_string()]);
        assert_eq!(echo.b[0], vec!["3/4".to_string(), "3/4".to_string()]);
    }

    #[test]
    fn bad_shape_and_entries_are_reported() {
        let ragged = r#"{"m":2,"A":[["1","0"]],"B":[["1","1"],["1","1"]]}"#;
        assert!(matches!(
            ModelFile::from_json(ragged).unwrap().to_pair(),
            Err(ModelError::RowCount { name: "A", .. })
        ));
        let bad_entry = r#"{"m":2,"A":[["1","x"],["1","0"]],"B":[["1","1"],["1","1"]]}"#;
        assert!(matches!(
            ModelFile::from_json(bad_entry).unwrap().to_pair(),
            Err(ModelError::Entry { name: "A", row: 0, col: 1, .. })
        ));
    }
}
