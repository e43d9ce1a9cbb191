//! The plain-text Cayley table format.
//!
//! ```text
//! # optional comment lines
//! 3
//! 1 1 1
//! 1 1 2
//! 1 2 3
//! ```
//!
//! The first non-comment line is the order `n`; then `n` rows of `n`
//! space-separated labels in `1..n`. Partial tables write unfilled cells as `?`.

use thiserror::Error;

use crate::cayley::{CayleyTable, PartialCayleyTable, MAX_TABLE_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// A parsed file: the table plus the text of its `#` comment lines.
#[derive(Debug, Clone)]
pub struct ParsedPartial {
    pub table: PartialCayleyTable,
    pub comments: Vec<String>,
}

pub fn parse_table(input: &str) -> Result<CayleyTable, ParseError> {
    let parsed = parse_partial_table(input)?;
    let n = parsed.table.order();
    if let Some((r, c)) = parsed.table.unfilled().next() {
        return Err(ParseError::new(
            0,
            0,
            format!("cell ({}, {}) of {n}x{n} table is unfilled", r + 1, c + 1),
        ));
    }
    Ok(parsed.table.to_table().expect("all cells filled"))
}

pub fn parse_partial_table(input: &str) -> Result<ParsedPartial, ParseError> {
    let mut comments = Vec::new();
    let mut order: Option<usize> = None;
    let mut table: Option<PartialCayleyTable> = None;
    let mut row = 0usize;
    let mut last_line = 0usize;

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            comments.push(comment.trim().to_string());
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let Some(n) = order else {
            let col = column_of(raw, trimmed);
            let n: usize = trimmed
                .parse()
                .map_err(|_| ParseError::new(line_no, col, format!("expected table order, found `{trimmed}`")))?;
            if n == 0 || n > MAX_TABLE_ORDER {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!("order must be between 1 and {MAX_TABLE_ORDER}, got {n}"),
                ));
            }
            order = Some(n);
            table = Some(PartialCayleyTable::empty(n).expect("order checked"));
            continue;
        };
        if row == n {
            return Err(ParseError::new(
                line_no,
                column_of(raw, trimmed),
                "unexpected content after last row",
            ));
        }
        let t = table.as_mut().expect("table allocated with order");
        let mut count = 0usize;
        for (col, token) in tokens(raw) {
            if count == n {
                return Err(ParseError::new(line_no, col, format!("row has more than {n} entries")));
            }
            if token != "?" {
                let v: usize = token
                    .parse()
                    .map_err(|_| ParseError::new(line_no, col, format!("expected a label or `?`, found `{token}`")))?;
                if v == 0 || v > n {
                    return Err(ParseError::new(line_no, col, format!("label {v} outside 1..{n}")));
                }
                t.set(row, count, v - 1).expect("label range checked");
            }
            count += 1;
        }
        if count < n {
            return Err(ParseError::new(
                line_no,
                raw.len() + 1,
                format!("row has {count} entries, expected {n}"),
            ));
        }
        row += 1;
    }

    match (order, table) {
        (Some(n), Some(table)) if row == n => Ok(ParsedPartial { table, comments }),
        (Some(n), _) => Err(ParseError::new(
            last_line + 1,
            1,
            format!("expected {n} rows, found {row}"),
        )),
        _ => Err(ParseError::new(last_line.max(1), 1, "missing table order line")),
    }
}

/// Whitespace-separated tokens with their 1-based starting column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}

fn column_of(raw: &str, trimmed: &str) -> usize {
    raw.len() - raw.trim_start().len() + if trimmed.is_empty() { 0 } else { 1 }
}
