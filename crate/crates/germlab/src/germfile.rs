//! Germ files.
//!
//! ```text
//! # three coordinate axes
//! vars: x, y, z
//! kind: general
//! matrix:
//!   [ x, 0, z ]
//!   [ 0, y, z ]
//! ```
//!
//! `kind` defaults to `general`. Blank lines and `#` comments are ignored.

use germlab_core::ring::parse_poly;
use germlab_core::{Error as CoreError, MatrixGerm, MatrixKind, VariableSet};

/// A diagnostic pointing at a line and column (both 1-based).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct GermFileError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> GermFileError {
    GermFileError { line, col, msg: msg.into() }
}

/// Entries of one bracketed row together with their starting columns.
/// `col0` is the column of the first character of `text`.
pub fn split_row(text: &str, line: usize, col0: usize) -> Result<Vec<(usize, String)>, GermFileError> {
    let t = text.trim_end();
    let lead = t.len() - t.trim_start().len();
    let t = t.trim_start();
    let open = col0 + lead;
    let inner = t
        .strip_prefix('[')
        .ok_or_else(|| err(line, open, "expected '[' to start a matrix row"))?
        .strip_suffix(']')
        .ok_or_else(|| err(line, open + t.chars().count() - 1, "expected ']' to end the matrix row"))?;
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let chars: Vec<char> = inner.chars().collect();
    let push = |from: usize, to: usize, out: &mut Vec<(usize, String)>| -> Result<(), GermFileError> {
        let s: String = chars[from..to].iter().collect();
        let skip = s.len() - s.trim_start().len();
        let col = open + 1 + from + skip;
        if s.trim().is_empty() {
            return Err(err(line, col, "empty matrix entry"));
        }
        out.push((col, s.trim().to_string()));
        Ok(())
    };
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                push(start, i, &mut out)?;
                start = i + 1;
            }
            _ => {}
        }
    }
    push(start, chars.len(), &mut out)?;
    Ok(out)
}

fn map_core(e: CoreError, line: usize, col: usize) -> GermFileError {
    match e {
        CoreError::Syntax { pos, msg } => err(line, col + pos - 1, msg),
        CoreError::UnknownVariable { name, pos } => err(line, col + pos - 1, format!("unknown variable `{name}`")),
        other => err(line, col, other.to_string()),
    }
}

/// Parses entry rows (each with line number and entries with columns) into a
/// matrix, mapping polynomial errors back to file positions.
pub fn build_matrix(
    vars: &VariableSet,
    kind: MatrixKind,
    rows: &[(usize, Vec<(usize, String)>)],
) -> Result<MatrixGerm, GermFileError> {
    let Some(first) = rows.first() else {
        return Err(err(0, 0, "matrix block has no rows"));
    };
    let mut entries = Vec::new();
    for (line, row) in rows {
        if row.len() != first.1.len() {
            return Err(err(*line, 1, format!("row has {} entries, expected {}", row.len(), first.1.len())));
        }
        let mut r = Vec::new();
        for (col, text) in row {
            r.push(parse_poly(text, vars).map_err(|e| map_core(e, *line, *col))?);
        }
        entries.push(r);
    }
    MatrixGerm::new(vars.clone(), kind, entries).map_err(|e| err(rows[0].0, 1, e.to_string()))
}

pub fn parse_germ_file(text: &str) -> Result<MatrixGerm, GermFileError> {
    let mut vars: Option<VariableSet> = None;
    let mut kind = MatrixKind::General;
    let mut in_matrix = false;
    let mut rows: Vec<(usize, Vec<(usize, String)>)> = Vec::new();
    let mut matrix_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        if in_matrix && content.trim_start().starts_with('[') {
            rows.push((line, split_row(content, line, 1)?));
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return Err(err(line, 1, "expected `key: value` or a matrix row"));
        };
        let vcol = key.chars().count() + 2 + value.len() - value.trim_start().len();
        match key.trim() {
            "vars" => {
                if vars.is_some() {
                    return Err(err(line, 1, "duplicate vars declaration"));
                }
                vars = Some(VariableSet::parse(value).map_err(|e| err(line, vcol, e.to_string()))?);
            }
            "kind" => {
                kind = MatrixKind::parse(value.trim())
                    .ok_or_else(|| err(line, vcol, format!("unknown kind `{}`", value.trim())))?;
            }
            "matrix" => {
                if !value.trim().is_empty() {
                    return Err(err(line, vcol, "matrix rows go on the following lines"));
                }
                if in_matrix || !rows.is_empty() {
                    return Err(err(line, 1, "duplicate matrix block"));
                }
                in_matrix = true;
                matrix_line = line;
            }
            other => return Err(err(line, 1, format!("unknown key `{other}`"))),
        }
    }
    let vars = vars.ok_or_else(|| err(1, 1, "missing vars declaration"))?;
    if !in_matrix {
        return Err(err(1, 1, "missing matrix block"));
    }
    if rows.is_empty() {
        return Err(err(matrix_line, 1, "matrix block has no rows"));
    }
    build_matrix(&vars, kind, &rows)
}

/// Renders a germ in canonical germ-file form.
pub fn write_germ_file(a: &MatrixGerm) -> String {
    let mut out = format!("vars: {}\nkind: {}\nmatrix:\n", a.vars().names().join(", "), a.kind());
    for r in a.display_rows() {
        out.push_str(&format!("  [ {} ]\n", r.join(", ")));
    }
    out
}
