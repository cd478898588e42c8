//! The `.tables` dataset format. The schema is documented in `docs/dataset.md`.

use std::path::Path;

use germlab_core::table::{CheckKind, Column, Constraint, Param, TableRow};
use germlab_core::{MatrixKind, VariableSet};

use crate::germfile::split_row;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DatasetError {
    #[error("line {line}{}: {msg}", row.as_ref().map(|r| format!(" (row `{r}`)")).unwrap_or_default())]
    Schema { line: usize, row: Option<String>, msg: String },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Default)]
struct Draft {
    start: usize,
    name: String,
    table: Option<String>,
    source: Option<String>,
    vars: Option<VariableSet>,
    kind: Option<MatrixKind>,
    matrix: Vec<Vec<String>>,
    params: Option<Vec<Param>>,
    constraints: Vec<Constraint>,
    expected: Vec<(usize, String, String)>,
    checks: Vec<(usize, String, CheckKind, Option<String>)>,
}

#[derive(Clone, Copy, PartialEq)]
enum Block {
    None,
    Matrix,
    Expected,
    Checks,
}

fn parse_param(text: &str) -> Result<Param, String> {
    let t = text.trim();
    if let Some((n, v)) = t.split_once(">=") {
        let min = v.trim().parse().map_err(|_| format!("bad lower bound in `{t}`"))?;
        return Ok(Param { name: n.trim().to_string(), min, max: None });
    }
    if let Some((n, r)) = t.split_once(" in ") {
        let (a, b) = r.split_once("..").ok_or_else(|| format!("expected `lo..hi` in `{t}`"))?;
        let min = a.trim().parse().map_err(|_| format!("bad lower bound in `{t}`"))?;
        let max = b.trim().parse().map_err(|_| format!("bad upper bound in `{t}`"))?;
        return Ok(Param { name: n.trim().to_string(), min, max: Some(max) });
    }
    Err(format!("expected `name >= lo` or `name in lo..hi`, got `{t}`"))
}

fn write_param(p: &Param) -> String {
    match p.max {
        None => format!("{} >= {}", p.name, p.min),
        Some(m) => format!("{} in {}..{}", p.name, p.min, m),
    }
}

impl Draft {
    fn finish(self) -> Result<TableRow, DatasetError> {
        let start = self.start;
        let rowname = Some(self.name.clone());
        let fail = |msg: String| DatasetError::Schema { line: start, row: rowname.clone(), msg };
        let missing = |what: &str| fail(format!("missing `{what}`"));
        let table = self.table.ok_or_else(|| missing("table"))?;
        let source = self.source.ok_or_else(|| missing("source"))?;
        let vars = self.vars.ok_or_else(|| missing("vars"))?;
        let kind = self.kind.ok_or_else(|| missing("kind"))?;
        let params = self.params.ok_or_else(|| missing("params"))?;
        if self.matrix.is_empty() {
            return Err(missing("matrix"));
        }
        if self.expected.is_empty() {
            return Err(missing("expected"));
        }
        if self.expected.len() != self.checks.len()
            || self.expected.iter().zip(&self.checks).any(|(e, c)| e.1 != c.1)
        {
            return Err(fail("`checks` must list the `expected` columns in the same order".into()));
        }
        let mut columns = Vec::new();
        for ((line, name, text), (_, _, kind, note)) in self.expected.into_iter().zip(self.checks) {
            let col = Column::new(&name, &text, kind, note.as_deref()).map_err(|e| DatasetError::Schema {
                line,
                row: rowname.clone(),
                msg: format!("column `{name}`: {e}"),
            })?;
            columns.push(col);
        }
        let row = TableRow {
            table,
            name: self.name,
            source,
            vars,
            kind,
            matrix: self.matrix,
            params,
            constraints: self.constraints,
            columns,
        };
        row.validate().map_err(|e| fail(e.to_string()))?;
        Ok(row)
    }
}

pub fn parse_dataset(text: &str) -> Result<Vec<TableRow>, DatasetError> {
    let mut rows = Vec::new();
    let mut cur: Option<Draft> = None;
    let mut block = Block::None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let row_name = cur.as_ref().map(|d| d.name.clone());
        let fail = |msg: String| DatasetError::Schema { line, row: row_name.clone(), msg };
        if raw.trim().is_empty() {
            continue;
        }
        let Some(d) = cur.as_mut() else {
            let name = raw
                .strip_prefix("row:")
                .ok_or_else(|| fail("expected `row: NAME`".into()))?
                .trim();
            if name.is_empty() {
                return Err(fail("empty row name".into()));
            }
            cur = Some(Draft { start: line, name: name.to_string(), ..Draft::default() });
            block = Block::None;
            continue;
        };
        if raw.trim() == "end" {
            rows.push(cur.take().unwrap().finish()?);
            continue;
        }
        if raw.starts_with(' ') {
            match block {
                Block::Matrix => {
                    let entries = split_row(raw, line, 1)
                        .map_err(|e| DatasetError::Schema { line, row: row_name.clone(), msg: e.msg })?;
                    d.matrix.push(entries.into_iter().map(|(_, s)| s).collect());
                }
                Block::Expected => {
                    let (k, v) = raw.split_once('=').ok_or_else(|| fail("expected `column = value`".into()))?;
                    d.expected.push((line, k.trim().to_string(), v.trim().to_string()));
                }
                Block::Checks => {
                    let (k, v) = raw.split_once(':').ok_or_else(|| fail("expected `column: check`".into()))?;
                    let v = v.trim();
                    let (kname, note) = match v.split_once(' ') {
                        Some((a, b)) => {
                            let n = b
                                .trim()
                                .strip_prefix('(')
                                .and_then(|s| s.strip_suffix(')'))
                                .ok_or_else(|| fail("a note must be parenthesized".into()))?;
                            (a, Some(n.to_string()))
                        }
                        None => (v, None),
                    };
                    let kind = CheckKind::parse(kname).ok_or_else(|| fail(format!("unknown check kind `{kname}`")))?;
                    d.checks.push((line, k.trim().to_string(), kind, note));
                }
                Block::None => return Err(fail("indented line outside a block".into())),
            }
            continue;
        }
        let (key, value) = raw.split_once(':').ok_or_else(|| fail("expected `key: value`".into()))?;
        let value = value.trim();
        block = Block::None;
        let dup = |present: bool| if present { Err(fail(format!("duplicate `{key}`"))) } else { Ok(()) };
        match key {
            "table" => {
                dup(d.table.is_some())?;
                d.table = Some(value.to_string());
            }
            "source" => {
                dup(d.source.is_some())?;
                d.source = Some(value.to_string());
            }
            "vars" => {
                dup(d.vars.is_some())?;
                d.vars = Some(VariableSet::parse(value).map_err(|e| fail(e.to_string()))?);
            }
            "kind" => {
                dup(d.kind.is_some())?;
                d.kind = Some(MatrixKind::parse(value).ok_or_else(|| fail(format!("unknown kind `{value}`")))?);
            }
            "params" => {
                dup(d.params.is_some())?;
                d.params = Some(if value == "none" {
                    Vec::new()
                } else {
                    value.split(',').map(parse_param).collect::<Result<_, _>>().map_err(fail)?
                });
            }
            "where" => {
                dup(!d.constraints.is_empty())?;
                for c in value.split(',') {
                    d.constraints.push(Constraint::parse(c.trim()).map_err(|e| fail(e.to_string()))?);
                }
            }
            "matrix" | "expected" | "checks" => {
                if !value.is_empty() {
                    return Err(fail(format!("`{key}` entries go on indented lines")));
                }
                block = match key {
                    "matrix" => Block::Matrix,
                    "expected" => Block::Expected,
                    _ => Block::Checks,
                };
            }
            other => return Err(fail(format!("unknown key `{other}`"))),
        }
    }
    if let Some(d) = cur {
        return Err(DatasetError::Schema { line: d.start, row: Some(d.name), msg: "missing `end`".into() });
    }
    Ok(rows)
}

/// Canonical text; `parse_dataset(write_dataset(rows)) == rows`, and a file
/// already in canonical form is reproduced byte for byte.
pub fn write_dataset(rows: &[TableRow]) -> String {
    let mut out = String::new();
    for (i, r) in rows.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("row: {}\n", r.name));
        out.push_str(&format!("table: {}\n", r.table));
        out.push_str(&format!("source: {}\n", r.source));
        out.push_str(&format!("vars: {}\n", r.vars));
        out.push_str(&format!("kind: {}\n", r.kind));
        out.push_str("matrix:\n");
        for row in &r.matrix {
            out.push_str(&format!("  [ {} ]\n", row.join(", ")));
        }
        if r.params.is_empty() {
            out.push_str("params: none\n");
        } else {
            let ps: Vec<String> = r.params.iter().map(write_param).collect();
            out.push_str(&format!("params: {}\n", ps.join(", ")));
        }
        if !r.constraints.is_empty() {
            let cs: Vec<String> = r.constraints.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("where: {}\n", cs.join(", ")));
        }
        out.push_str("expected:\n");
        for c in &r.columns {
            out.push_str(&format!("  {} = {}\n", c.name, c.text));
        }
        out.push_str("checks:\n");
        for c in &r.columns {
            match &c.note {
                Some(n) => out.push_str(&format!("  {}: {} ({})\n", c.name, c.kind, n)),
                None => out.push_str(&format!("  {}: {}\n", c.name, c.kind)),
            }
        }
        out.push_str("end\n");
    }
    out
}

pub fn load_tables(path: &Path) -> Result<Vec<TableRow>, DatasetError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DatasetError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse_dataset(&text)
}
