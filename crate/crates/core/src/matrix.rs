//! Matrices of polynomial germs.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::jetlin::{invert_matrix_jet, ModuleElement};
use crate::ring::{parse_poly, Poly, VariableSet};

/// Structural type of a matrix germ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixKind {
    General,
    Symmetric,
    Skew,
}

impl MatrixKind {
    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::General => "general",
            MatrixKind::Symmetric => "symmetric",
            MatrixKind::Skew => "skew",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "general" => Some(MatrixKind::General),
            "symmetric" => Some(MatrixKind::Symmetric),
            "skew" => Some(MatrixKind::Skew),
            _ => None,
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An `m x n` matrix of polynomials over a named variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGerm {
    vars: VariableSet,
    kind: MatrixKind,
    entries: Vec<Vec<Poly>>,
}

impl MatrixGerm {
    pub fn new(vars: VariableSet, kind: MatrixKind, entries: Vec<Vec<Poly>>) -> Result<Self> {
        let m = entries.len();
        if m == 0 || entries[0].is_empty() {
            return Err(Error::Shape("matrix must be nonempty".into()));
        }
        let n = entries[0].len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("rows have different lengths".into()));
        }
        if entries.iter().flatten().any(|p| p.nvars() != vars.len()) {
            return Err(Error::Shape("entry over a different variable set".into()));
        }
        match kind {
            MatrixKind::General => {}
            MatrixKind::Symmetric => {
                if m != n {
                    return Err(Error::Kind("a symmetric matrix must be square".into()));
                }
                for i in 0..m {
                    for j in i + 1..n {
                        if entries[i][j] != entries[j][i] {
                            return Err(Error::Kind(alloc::format!(
                                "entries ({}, {}) and ({}, {}) differ",
                                i + 1,
                                j + 1,
                                j + 1,
                                i + 1
                            )));
                        }
                    }
                }
            }
            MatrixKind::Skew => {
                if m != n {
                    return Err(Error::Kind("a skew matrix must be square".into()));
                }
                for i in 0..m {
                    if !entries[i][i].is_zero() {
                        return Err(Error::Kind(alloc::format!("diagonal entry ({}, {}) is not zero", i + 1, i + 1)));
                    }
                    for j in i + 1..n {
                        if entries[i][j] != entries[j][i].neg() {
                            return Err(Error::Kind(alloc::format!(
                                "entry ({}, {}) is not the negative of ({}, {})",
                                i + 1,
                                j + 1,
                                j + 1,
                                i + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(MatrixGerm { vars, kind, entries })
    }

    /// Builds a matrix from entry strings.
    pub fn parse(vars: &VariableSet, kind: MatrixKind, rows: &[&[&str]]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|e| parse_poly(e, vars)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MatrixGerm::new(vars.clone(), kind, entries)
    }

    /// Skew matrix from its strict upper triangle, listed row by row.
    pub fn skew_from_upper(vars: VariableSet, size: usize, upper: Vec<Poly>) -> Result<Self> {
        if upper.len() != size * (size - 1) / 2 {
            return Err(Error::Shape("wrong number of upper-triangle entries".into()));
        }
        let nv = vars.len();
        let mut e = vec![vec![Poly::zero(nv); size]; size];
        let mut it = upper.into_iter();
        for i in 0..size {
            for j in i + 1..size {
                let p = it.next().unwrap();
                e[j][i] = p.neg();
                e[i][j] = p;
            }
        }
        MatrixGerm::new(vars, MatrixKind::Skew, e)
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    /// Entries in row-major order.
    pub fn flatten(&self) -> Vec<Poly> {
        self.entries.iter().flatten().cloned().collect()
    }

    pub fn transpose(&self) -> MatrixGerm {
        let (m, n) = (self.rows(), self.cols());
        let e = (0..n).map(|j| (0..m).map(|i| self.entries[i][j].clone()).collect()).collect();
        MatrixGerm { vars: self.vars.clone(), kind: self.kind, entries: e }
    }

    /// Same entries, different structural tag (validated).
    pub fn with_kind(&self, kind: MatrixKind) -> Result<MatrixGerm> {
        MatrixGerm::new(self.vars.clone(), kind, self.entries.clone())
    }

    /// Positions whose entry does not vanish at the origin.
    pub fn unit_entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, r) in self.entries.iter().enumerate() {
            for (j, p) in r.iter().enumerate() {
                if !p.constant_term().is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Packed coordinate positions: all entries, the upper triangle, or the strict upper triangle.
    pub fn packed_positions(&self) -> Vec<(usize, usize)> {
        packed_positions(self.kind, self.rows(), self.cols())
    }

    pub fn packed_dim(&self) -> usize {
        self.packed_positions().len()
    }

    /// The matrix as an element of its packed free module.
    pub fn pack(&self) -> ModuleElement {
        pack_entries(self.kind, &self.entries)
    }

    /// Entry-wise map.
    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> MatrixGerm {
        MatrixGerm {
            vars: self.vars.clone(),
            kind: self.kind,
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    /// Moves the matrix into a larger variable set whose first names agree.
    pub fn extend_vars(&self, vars: VariableSet) -> Result<MatrixGerm> {
        if vars.len() < self.nvars() || vars.names()[..self.nvars()] != *self.vars.names() {
            return Err(Error::Variables("new variable set must extend the old one".into()));
        }
        let extra = vars.len() - self.nvars();
        let e = self.entries.iter().map(|r| r.iter().map(|p| p.extend_vars(extra)).collect()).collect();
        Ok(MatrixGerm { vars, kind: self.kind, entries: e })
    }

    /// Rows of entry strings in canonical form.
    pub fn display_rows(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|p| p.display(&self.vars)).collect()).collect()
    }

    /// Removes unit entries by the Schur complement, computing inverses modulo `m^order`.
    ///
    /// Returns the reduced matrix and the number of reduction steps; a general
    /// step drops one row and one column, a symmetric off-diagonal or a skew step
    /// drops two of each. `None` when every entry is a unit and nothing is left.
    pub fn reduce_units(&self, order: u32) -> Result<(Option<MatrixGerm>, usize)> {
        let mut cur = self.clone();
        let mut steps = 0;
        loop {
            let units = cur.unit_entries();
            let Some(&(i, j)) = units
                .iter()
                .find(|(i, j)| i == j)
                .or_else(|| units.first())
                .filter(|_| !units.is_empty())
            else {
                return Ok((Some(cur), steps));
            };
            let block: Vec<(usize, usize)> = match cur.kind {
                MatrixKind::General => vec![(i, j)],
                MatrixKind::Symmetric if i == j => vec![(i, i)],
                MatrixKind::Symmetric | MatrixKind::Skew => vec![(i, j), (j, i)],
            };
            let rows: Vec<usize> = block.iter().map(|b| b.0).collect();
            let cols: Vec<usize> = block.iter().map(|b| b.1).collect();
            steps += 1;
            if rows.len() == cur.rows() || cols.len() == cur.cols() {
                return Ok((None, steps));
            }
            cur = cur.schur(&rows, &cols, order)?;
        }
    }

    /// `D - C * U^{-1} * B` where `U` is the block at `rows x cols`.
    fn schur(&self, rows: &[usize], cols: &[usize], order: u32) -> Result<MatrixGerm> {
        let nv = self.nvars();
        let bound = Some(order.saturating_sub(1));
        let u: Vec<Vec<Poly>> = rows.iter().map(|&r| cols.iter().map(|&c| self.entries[r][c].clone()).collect()).collect();
        let uinv = invert_matrix_jet(&u, order)?;
        let keep_r: Vec<usize> = (0..self.rows()).filter(|r| !rows.contains(r)).collect();
        let keep_c: Vec<usize> = (0..self.cols()).filter(|c| !cols.contains(c)).collect();
        let k = rows.len();
        let mut e = vec![vec![Poly::zero(nv); keep_c.len()]; keep_r.len()];
        for (a, &r) in keep_r.iter().enumerate() {
            // C row times U^{-1}
            let mut cu = vec![Poly::zero(nv); k];
            for (l, slot) in cu.iter_mut().enumerate() {
                for (q, &cc) in cols.iter().enumerate() {
                    *slot = slot.add(&self.entries[r][cc].mul_trunc(&uinv[q][l], bound));
                }
            }
            for (b, &c) in keep_c.iter().enumerate() {
                let mut v = self.entries[r][c].jet(order.saturating_sub(1));
                for (l, &rr) in rows.iter().enumerate() {
                    v = v.sub(&cu[l].mul_trunc(&self.entries[rr][c], bound));
                }
                e[a][b] = v;
            }
        }
        // symmetric and skew structure is preserved exactly; re-impose to absorb truncation
        let mut out = MatrixGerm { vars: self.vars.clone(), kind: self.kind, entries: e };
        if self.kind != MatrixKind::General {
            let s = out.rows();
            for i in 0..s {
                for j in 0..i {
                    out.entries[i][j] = match self.kind {
                        MatrixKind::Symmetric => out.entries[j][i].clone(),
                        _ => out.entries[j][i].neg(),
                    };
                }
                if self.kind == MatrixKind::Skew {
                    out.entries[i][i] = Poly::zero(nv);
                }
            }
        }
        Ok(out)
    }
}

pub fn packed_positions(kind: MatrixKind, m: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let keep = match kind {
                MatrixKind::General => true,
                MatrixKind::Symmetric => i <= j,
                MatrixKind::Skew => i < j,
            };
            if keep {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn pack_entries(kind: MatrixKind, e: &[Vec<Poly>]) -> ModuleElement {
    let m = e.len();
    let n = e.first().map(Vec::len).unwrap_or(0);
    ModuleElement::new(packed_positions(kind, m, n).into_iter().map(|(i, j)| e[i][j].clone()).collect())
}

/// Product of polynomial matrices with optional truncation.
pub fn mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>], nvars: usize, bound: Option<u32>) -> Vec<Vec<Poly>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map(Vec::len).unwrap_or(0);
    let mut out = vec![vec![Poly::zero(nvars); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = Poly::zero(nvars);
            for l in 0..k {
                if !a[i][l].is_zero() && !b[l][j].is_zero() {
                    acc = acc.add(&a[i][l].mul_trunc(&b[l][j], bound));
                }
            }
            out[i][j] = acc;
        }
    }
    out
}
