//! Matrix file formats.
//!
//! JSON: `{"n":N,"type":"...","entries":[[...],...]}` on one line, row-major.
//! CSV: `N` lines of `N` comma-separated integers, no header.
//! Both writers end with a newline, and parsing a written file gives back
//! the same grid.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::ColoringMatrix;
use crate::grid::{Color, ColorGrid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    n: usize,
    #[serde(rename = "type")]
    kind: String,
    entries: Vec<Vec<Color>>,
}

pub fn to_json(mat: &ColoringMatrix) -> String {
    let wire = MatrixWire { n: mat.n(), kind: mat.label().to_string(), entries: mat.grid().to_rows() };
    let mut s = serde_json::to_string(&wire).expect("matrix serializes");
    s.push('\n');
    s
}

pub fn to_csv(grid: &ColorGrid) -> String {
    let mut s = String::with_capacity(grid.cells().len() * 4);
    for r in 0..grid.rows() {
        let line: Vec<String> = grid.row(r).iter().map(Color::to_string).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}

pub fn write(mat: &ColoringMatrix, format: Format) -> String {
    match format {
        Format::Json => to_json(mat),
        Format::Csv => to_csv(mat.grid()),
    }
}

/// A malformed matrix file. `line` and `column` are 1-based; 0 means "whole file".
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

/// A square grid read from disk, with the `type` label when the file had one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedMatrix {
    pub grid: ColorGrid,
    pub label: Option<String>,
}

/// Parses JSON when the first non-blank character is `{`, CSV otherwise.
pub fn parse(text: &str) -> Result<ParsedMatrix, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_csv(text)
    }
}

pub fn parse_json(text: &str) -> Result<ParsedMatrix, ParseError> {
    let wire: MatrixWire =
        serde_json::from_str(text).map_err(|e| ParseError::new(e.line(), e.column(), e.to_string()))?;
    if wire.entries.len() != wire.n {
        return Err(ParseError::new(0, 0, format!("\"n\" is {} but there are {} rows", wire.n, wire.entries.len())));
    }
    for (r, row) in wire.entries.iter().enumerate() {
        if row.len() != wire.n {
            return Err(ParseError::new(0, 0, format!("row {} has {} entries, expected {}", r + 1, row.len(), wire.n)));
        }
        if let Some(c) = row.iter().position(|&v| v == 0) {
            return Err(ParseError::new(0, 0, format!("entry ({},{}) is 0; colors start at 1", r + 1, c + 1)));
        }
    }
    let grid = ColorGrid::from_rows(&wire.entries).expect("rows checked");
    Ok(ParsedMatrix { grid, label: Some(wire.kind) })
}

pub fn parse_csv(text: &str) -> Result<ParsedMatrix, ParseError> {
    let mut rows: Vec<Vec<Color>> = Vec::new();
    let lines: Vec<&str> = text.lines().collect();
    let last_nonblank = lines.iter().rposition(|l| !l.trim().is_empty());
    let Some(last) = last_nonblank else {
        return Err(ParseError::new(0, 0, "empty matrix"));
    };
    for (idx, line) in lines[..=last].iter().enumerate() {
        let lineno = idx + 1;
        let mut row = Vec::new();
        let mut column = 1;
        for field in line.split(',') {
            let value = field.trim();
            let at = column + (field.len() - field.trim_start().len());
            match value.parse::<Color>() {
                Ok(0) => return Err(ParseError::new(lineno, at, "color 0 is not allowed; colors start at 1")),
                Ok(v) => row.push(v),
                Err(_) => return Err(ParseError::new(lineno, at, format!("{value:?} is not a positive integer"))),
            }
            column += field.len() + 1;
        }
        rows.push(row);
    }
    let n = rows.len();
    for (idx, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(ParseError::new(
                idx + 1,
                0,
                format!("row has {} entries but the matrix has {n} rows", row.len()),
            ));
        }
    }
    Ok(ParsedMatrix { grid: ColorGrid::from_rows(&rows).expect("rows checked"), label: None })
}
