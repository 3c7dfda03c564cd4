//! Plain-text group files.
//!
//! ```text
//! n 5
//! d 2
//!
//! 2 0
//! 0 3
//!
//! J:
//! 0 1
//! 1 0
//! ```
//!
//! Header lines `n <int>` and `d <int>`, then generator blocks of `d` rows
//! separated by blank lines, and optionally one `J:` block.

use supertab::{ModMatrix, Modulus};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub modulus: Modulus,
    pub dim: usize,
    pub generators: Vec<ModMatrix>,
    pub j: Option<ModMatrix>,
}

fn next_content<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Option<(usize, &'a str)> {
    lines.find(|(_, l)| !l.is_empty())
}

fn header_value(line_no: usize, line: &str, key: &str) -> Result<u64, ParseError> {
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => {
            v.parse::<u64>().or_else(|_| err(line_no, format!("'{key}' expects a non-negative integer, got '{v}'")))
        }
        _ => err(line_no, format!("expected header '{key} <int>'")),
    }
}

pub fn parse_group_file(text: &str) -> Result<GroupFile, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).peekable();

    let Some((ln, line)) = next_content(&mut lines) else {
        return err(1, "empty group file");
    };
    let n = header_value(ln, line, "n")?;
    let modulus = Modulus::new(n).or_else(|_| err(ln, format!("modulus must be at least 2, got {n}")))?;
    let Some((ln, line)) = next_content(&mut lines) else {
        return err(ln + 1, "missing header 'd <int>'");
    };
    let d = header_value(ln, line, "d")? as usize;
    if d == 0 {
        return err(ln, "dimension must be at least 1");
    }

    let mut generators = Vec::new();
    let mut j = None;
    let mut last_line = ln;
    while let Some((start, first)) = next_content(&mut lines) {
        let is_j = first == "J:";
        if is_j && j.is_some() {
            return err(start, "more than one J block");
        }
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(d);
        let mut pending = if is_j { None } else { Some((start, first)) };
        last_line = start;
        while rows.len() < d {
            let (ln, row_text) = match pending.take() {
                Some(p) => p,
                None => match lines.next() {
                    Some((ln, l)) if !l.is_empty() => (ln, l),
                    Some((ln, _)) => {
                        return err(ln, format!("matrix block starting at line {start} has fewer than {d} rows"))
                    }
                    None => {
                        return err(
                            last_line + 1,
                            format!("matrix block starting at line {start} has fewer than {d} rows"),
                        )
                    }
                },
            };
            last_line = ln;
            let row = row_text
                .split_whitespace()
                .map(|tok| tok.parse::<i64>().or_else(|_| err(ln, format!("'{tok}' is not an integer"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != d {
                return err(ln, format!("expected {d} entries, found {}", row.len()));
            }
            rows.push(row);
        }
        if let Some(&(ln, l)) = lines.peek() {
            if !l.is_empty() {
                return err(ln, format!("matrix block starting at line {start} has more than {d} rows"));
            }
        }
        let m = ModMatrix::from_rows(modulus, &rows).expect("rows checked to be d x d");
        if is_j {
            j = Some(m);
        } else {
            generators.push(m);
        }
    }
    if generators.is_empty() {
        return err(last_line + 1, "no generator blocks");
    }
    Ok(GroupFile { modulus, dim: d, generators, j })
}
