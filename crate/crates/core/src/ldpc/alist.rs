//! Reader and writer for the alist sparse-matrix text format.
//!
//! Layout (1-based indices, one record per line):
//!
//! ```text
//! n m
//! max_col_degree max_row_degree
//! <n column degrees>
//! <m row degrees>
//! <n lines: rows of each column>
//! <m lines: columns of each row>
//! ```
//!
//! Zero entries in adjacency lines are padding and are ignored. Blank lines
//! are skipped.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::ParityCheckMatrix;
use crate::error::{Error, Result};

pub fn load_alist(path: impl AsRef<Path>) -> Result<ParityCheckMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_alist(&text, &path.display().to_string())
}

pub fn save_alist(h: &ParityCheckMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_alist_string(h)).map_err(|e| Error::io(path, e))
}

pub fn to_alist_string(h: &ParityCheckMatrix) -> String {
    let cols = h.columns();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = h.rows().iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    let join = |it: &mut dyn Iterator<Item = usize>| {
        it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    };
    let _ = writeln!(out, "{} {}", h.n(), h.m());
    let _ = writeln!(out, "{max_col} {max_row}");
    let _ = writeln!(out, "{}", join(&mut cols.iter().map(Vec::len)));
    let _ = writeln!(out, "{}", join(&mut h.rows().iter().map(Vec::len)));
    for col in &cols {
        let padded = col.iter().map(|&i| i + 1).chain(std::iter::repeat(0));
        let _ = writeln!(out, "{}", join(&mut padded.take(max_col)));
    }
    for row in h.rows() {
        let padded = row.iter().map(|&j| j + 1).chain(std::iter::repeat(0));
        let _ = writeln!(out, "{}", join(&mut padded.take(max_row)));
    }
    out
}

/// Parses alist text. `source_name` labels parse errors.
pub fn parse_alist(text: &str, source_name: &str) -> Result<ParityCheckMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, msg: String| Error::parse(source_name, line, msg);

    let mut next_line = |what: &str| -> Result<(usize, Vec<usize>)> {
        let (no, line) = lines
            .next()
            .ok_or_else(|| err(0, format!("unexpected end of input, expected {what}")))?;
        let values = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| err(no, format!("invalid integer {tok:?} in {what}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((no, values))
    };

    let (no, dims) = next_line("header `n m`")?;
    let [n, m] = dims[..] else {
        return Err(err(no, "header must contain exactly `n m`".into()));
    };
    if m == 0 || m >= n {
        return Err(err(no, format!("need 0 < m < n, got n={n} m={m}")));
    }
    let (no, maxes) = next_line("maximum degrees")?;
    let [max_col, max_row] = maxes[..] else {
        return Err(err(no, "expected `max_col_degree max_row_degree`".into()));
    };
    let (no, col_deg) = next_line("column degrees")?;
    if col_deg.len() != n {
        return Err(err(
            no,
            format!("expected {n} column degrees, found {}", col_deg.len()),
        ));
    }
    if col_deg.iter().any(|&d| d > max_col) {
        return Err(err(
            no,
            format!("column degree exceeds declared maximum {max_col}"),
        ));
    }
    let (no, row_deg) = next_line("row degrees")?;
    if row_deg.len() != m {
        return Err(err(
            no,
            format!("expected {m} row degrees, found {}", row_deg.len()),
        ));
    }
    if row_deg.iter().any(|&d| d > max_row) {
        return Err(err(
            no,
            format!("row degree exceeds declared maximum {max_row}"),
        ));
    }

    let mut cols = Vec::with_capacity(n);
    for (j, &degree) in col_deg.iter().enumerate() {
        let (no, entries) = next_line("column adjacency")?;
        let list = adjacency(&entries, m, degree)
            .map_err(|msg| err(no, format!("column {}: {msg}", j + 1)))?;
        cols.push(list);
    }
    let mut rows = Vec::with_capacity(m);
    for (i, &degree) in row_deg.iter().enumerate() {
        let (no, entries) = next_line("row adjacency")?;
        let list = adjacency(&entries, n, degree)
            .map_err(|msg| err(no, format!("row {}: {msg}", i + 1)))?;
        for &j in &list {
            if !cols[j].contains(&i) {
                return Err(err(
                    no,
                    format!(
                        "row {} lists column {} but that column does not list the row",
                        i + 1,
                        j + 1
                    ),
                ));
            }
        }
        rows.push(list);
    }
    let edges: usize = rows.iter().map(Vec::len).sum();
    if edges != cols.iter().map(Vec::len).sum::<usize>() {
        return Err(err(0, "column and row adjacency lists disagree".into()));
    }
    if let Some((no, _)) = lines.next() {
        return Err(err(no, "trailing content after row adjacency".into()));
    }

    ParityCheckMatrix::new(n, rows).map_err(|e| err(0, e.to_string()))
}

/// Converts a 1-based, zero-padded adjacency line to 0-based positions.
fn adjacency(
    entries: &[usize],
    bound: usize,
    degree: usize,
) -> std::result::Result<Vec<usize>, String> {
    let mut list = Vec::with_capacity(degree);
    for &e in entries.iter().filter(|&&e| e != 0) {
        if e > bound {
            return Err(format!("position {e} outside 1..={bound}"));
        }
        list.push(e - 1);
    }
    if list.len() != degree {
        return Err(format!(
            "declared degree {degree} but found {} entries",
            list.len()
        ));
    }
    let mut sorted = list.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err("repeated position".into());
    }
    Ok(list)
}
