//! JSON polynomial files.
//!
//! ```json
//! {
//!   "name": "p",
//!   "dimension": 3,
//!   "coefficients": [5.0, 1.0, 2.0, 3.0],
//!   "exponents": [[0, 0, 0], [3, 1, 0], [2, 0, 1], [1, 1, 1]]
//! }
//! ```
//!
//! `name` is optional. Monomials keep the order given in the file; duplicate
//! exponent rows are rejected.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::poly::{CanonicalPolynomial, PolyError};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("invalid polynomial: {0}")]
    Polynomial(#[from] PolyError),
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> FileError {
    FileError::Schema {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialFile {
    pub name: Option<String>,
    pub polynomial: CanonicalPolynomial,
}

#[derive(Serialize)]
struct Document<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<&'a str>,
    dimension: usize,
    coefficients: &'a [f64],
    exponents: Vec<Vec<u32>>,
}

pub fn parse_polynomial(text: &str) -> Result<PolynomialFile, FileError> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| schema("<root>", "expected a JSON object"))?;

    let dimension = obj
        .get("dimension")
        .ok_or_else(|| schema("dimension", "missing"))?;
    let dimension = dimension
        .as_u64()
        .filter(|&d| d >= 1)
        .ok_or_else(|| schema("dimension", format!("expected a positive integer, found {dimension}")))?
        as usize;

    let coefficients = obj
        .get("coefficients")
        .ok_or_else(|| schema("coefficients", "missing"))?
        .as_array()
        .ok_or_else(|| schema("coefficients", "expected an array of numbers"))?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.as_f64()
                .ok_or_else(|| schema(format!("coefficients[{i}]"), format!("expected a number, found {c}")))
        })
        .collect::<Result<Vec<f64>, _>>()?;

    let rows = obj
        .get("exponents")
        .ok_or_else(|| schema("exponents", "missing"))?
        .as_array()
        .ok_or_else(|| schema("exponents", "expected an array of integer arrays"))?;
    let mut exponents = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| schema(format!("exponents[{i}]"), "expected an array of integers"))?;
        if row.len() != dimension {
            return Err(schema(
                format!("exponents[{i}]"),
                format!("has {} entries, dimension is {dimension}", row.len()),
            ));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, e)| {
                e.as_u64()
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| {
                        schema(
                            format!("exponents[{i}][{j}]"),
                            format!("expected a nonnegative integer, found {e}"),
                        )
                    })
            })
            .collect::<Result<Vec<u32>, _>>()?;
        exponents.push(parsed);
    }
    if coefficients.len() != exponents.len() {
        return Err(schema(
            "coefficients",
            format!(
                "{} coefficients but {} exponent rows",
                coefficients.len(),
                exponents.len()
            ),
        ));
    }

    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(other) => return Err(schema("name", format!("expected a string, found {other}"))),
    };

    let polynomial = CanonicalPolynomial::new(coefficients, exponents, false)?;
    Ok(PolynomialFile { name, polynomial })
}

pub fn to_json(p: &CanonicalPolynomial, name: Option<&str>) -> String {
    let doc = Document {
        name,
        dimension: p.dimension(),
        coefficients: p.coefficients(),
        exponents: p.exponent_rows(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn read_polynomial(path: &Path) -> Result<PolynomialFile, FileError> {
    let text = fs::read_to_string(path).map_err(|source| FileError::Read {
        path: path.to_owned(),
        source,
    })?;
    parse_polynomial(&text)
}

pub fn write_polynomial(path: &Path, p: &CanonicalPolynomial, name: Option<&str>) -> Result<(), FileError> {
    fs::write(path, to_json(p, name)).map_err(|source| FileError::Write {
        path: path.to_owned(),
        source,
    })
}
