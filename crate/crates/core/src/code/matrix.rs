//! Text format for matrices: one row per line (or `;`-separated), entries
//! separated by whitespace, each entry in the ring's element syntax.

use super::CodeError;
use crate::algebra::{Elem, Ring};

pub fn parse_matrix(ring: &Ring, text: &str) -> Result<Vec<Vec<Elem>>, CodeError> {
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for (lineno, line) in text.split(['\n', ';']).enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| ring.parse_elem(tok))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CodeError::Parse(format!("row {}: {e}", lineno + 1)))?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(CodeError::RaggedRows);
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CodeError::EmptyMatrix);
    }
    Ok(rows)
}

pub fn format_matrix(ring: &Ring, rows: &[Vec<Elem>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|&x| ring.format_elem(x)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
