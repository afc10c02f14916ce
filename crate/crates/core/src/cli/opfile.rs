//! Operator files and matrix dumps.
//!
//! Operator file:
//!
//! ```text
//! ring rational        # or: integer, laurent, gf <p>
//! dim 2
//! 1 0 0 0              # d² rows of d² literals, no spaces inside a literal
//! 0 0 1 0
//! 0 1 0 0
//! 0 0 0 1
//! ```
//!
//! Row and column `(i-1)·d + (j-1)` (1-based `i, j`) belongs to `e_i ⊗ e_j`.
//! Blank lines and text after `#` are ignored.
//!
//! Machine dump: `ring <token>`, `shape <rows> <cols>`, then one line
//! `w <row> <col> <scalar>` per entry, 1-based, row-major.

use thiserror::Error;

use crate::scalar::{format_scalar, parse_scalar, Ring, Scalar};
use crate::tensorlin::ExactMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct OpFileError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> OpFileError {
    OpFileError {
        line,
        message: message.into(),
    }
}

/// Content lines with their 1-based line numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn keyword<'a>(entry: Option<(usize, &'a str)>, key: &str) -> Result<(usize, &'a str), OpFileError> {
    let (line, text) = entry.ok_or_else(|| err(0, format!("missing `{key}` line")))?;
    let rest = text
        .strip_prefix(key)
        .filter(|rest| rest.is_empty() || rest.starts_with(char::is_whitespace))
        .ok_or_else(|| err(line, format!("expected `{key} ...`, found `{text}`")))?;
    Ok((line, rest.trim()))
}

/// A parsed operator file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorFile {
    pub ring: Ring,
    pub dim: usize,
    pub matrix: ExactMatrix,
}

pub fn parse_operator_file(text: &str) -> Result<OperatorFile, OpFileError> {
    let mut lines = content_lines(text);
    let (line, ring_text) = keyword(lines.next(), "ring")?;
    let ring: Ring = ring_text.parse().map_err(|e| err(line, format!("{e}")))?;
    let (line, dim_text) = keyword(lines.next(), "dim")?;
    let dim: usize = dim_text
        .parse()
        .ok()
        .filter(|&d| d >= 1)
        .ok_or_else(|| err(line, format!("dimension must be a positive integer, found `{dim_text}`")))?;
    let size = dim * dim;
    let mut entries = Vec::with_capacity(size * size);
    let mut last_line = line;
    for row in 0..size {
        let (line, text) = lines
            .next()
            .ok_or_else(|| err(last_line, format!("expected {size} matrix rows, found {row}")))?;
        last_line = line;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != size {
            return Err(err(line, format!("expected {size} entries, found {}", tokens.len())));
        }
        for token in tokens {
            entries.push(parse_scalar(token, ring).map_err(|e| err(line, format!("`{token}`: {e}")))?);
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(err(line, "unexpected content after the matrix"));
    }
    let matrix = ExactMatrix::from_entries(ring, size, size, entries).expect("entry count checked");
    Ok(OperatorFile { ring, dim, matrix })
}

fn compact(s: &Scalar) -> String {
    format_scalar(s).replace(' ', "")
}

pub fn format_operator_file(ring: Ring, dim: usize, matrix: &ExactMatrix) -> String {
    let mut out = format!("ring {}\ndim {dim}\n", ring.token());
    for r in 0..matrix.rows() {
        let row: Vec<String> = matrix.row(r).iter().map(compact).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Rows as comma-separated literals; a `1x1` matrix prints as its entry.
pub fn format_text(m: &ExactMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(format_scalar).collect();
        out.push_str(&row.join(", "));
        out.push('\n');
    }
    out
}

pub fn format_machine(m: &ExactMatrix) -> String {
    let mut out = format!("ring {}\nshape {} {}\n", m.ring().token(), m.rows(), m.cols());
    for r in 0..m.rows() {
        for (c, x) in m.row(r).iter().enumerate() {
            out.push_str(&format!("w {} {} {}\n", r + 1, c + 1, format_scalar(x)));
        }
    }
    out
}

pub fn parse_machine(text: &str) -> Result<ExactMatrix, OpFileError> {
    let mut lines = content_lines(text);
    let (line, ring_text) = keyword(lines.next(), "ring")?;
    let ring: Ring = ring_text.parse().map_err(|e| err(line, format!("{e}")))?;
    let (line, shape_text) = keyword(lines.next(), "shape")?;
    let shape: Vec<usize> = shape_text
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| err(line, "malformed shape"))?;
    let [rows, cols] = shape[..] else {
        return Err(err(line, "shape needs two extents"));
    };
    let mut m = ExactMatrix::zeros(ring, rows, cols);
    let mut seen = 0;
    for (line, text) in lines {
        let mut parts = text.splitn(4, char::is_whitespace);
        let (Some("w"), Some(r), Some(c), Some(value)) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(err(line, "expected `w <row> <col> <scalar>`"));
        };
        let (Ok(r), Ok(c)) = (r.parse::<usize>(), c.parse::<usize>()) else {
            return Err(err(line, "malformed index"));
        };
        if r == 0 || c == 0 || r > rows || c > cols {
            return Err(err(line, format!("index ({r},{c}) outside {rows}x{cols}")));
        }
        let x = parse_scalar(value, ring).map_err(|e| err(line, format!("{e}")))?;
        m.set(r - 1, c - 1, x);
        seen += 1;
    }
    if seen != rows * cols {
        return Err(err(0, format!("expected {} entries, found {seen}", rows * cols)));
    }
    Ok(m)
}
