use alloc::vec::Vec;

use super::milnor::milnor;
use crate::detideal::{det, minors, pfaffian, pfaffians};
use crate::error::{Error, Result};
use crate::jetlin::{colength_with, ColengthConfig, ModuleElement};
use crate::matrix::{MatrixGerm, MatrixKind};

/// Codimension of the singular locus of the generic determinantal hypersurface.
pub fn boundary_dimension(kind: MatrixKind) -> usize {
    match kind {
        MatrixKind::General => 4,
        MatrixKind::Symmetric => 3,
        MatrixKind::Skew => 6,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularMilnor {
    /// Milnor number of the determinant (or Pfaffian).
    pub mu_f: usize,
    /// Colength of the submaximal minors (or Pfaffians).
    pub colength: usize,
    pub mu: i64,
}

pub fn singular_milnor_hypersurface(a: &MatrixGerm, cfg: &ColengthConfig) -> Result<SingularMilnor> {
    let m = a.rows();
    if m != a.cols() {
        return Err(Error::Shape("singular Milnor number needs a square matrix".into()));
    }
    let kind = a.kind();
    if kind == MatrixKind::Skew && m % 2 == 1 {
        return Err(Error::Shape("odd skew matrices have zero Pfaffian".into()));
    }
    let p = a.nvars();
    let c = boundary_dimension(kind);
    if p != c {
        return Err(Error::Range(alloc::format!("{kind} matrices need {c} variables here, got {p}")));
    }
    let nv = p;
    let (f, sub): (_, Vec<_>) = match kind {
        MatrixKind::Skew => {
            let f = pfaffian(a.entries(), nv);
            let sub = if m > 2 { pfaffians(a, m / 2 - 1)?.into_iter().map(|(_, q)| q).collect() } else { Vec::new() };
            (f, sub)
        }
        _ => {
            let f = det(a.entries(), nv);
            let sub = if m > 1 { minors(a, m - 1)?.into_iter().map(|(_, _, q)| q).collect() } else { Vec::new() };
            (f, sub)
        }
    };
    let mu_f = milnor(&f, cfg)?;
    if !mu_f.certified {
        return Err(Error::Uncertified { what: "Milnor number of the determinant".into(), order: mu_f.certified_at });
    }
    // an empty submaximal ideal is the unit ideal
    let colength = if sub.is_empty() {
        0
    } else {
        let gens: Vec<ModuleElement> = sub.into_iter().map(ModuleElement::scalar).collect();
        let r = colength_with(&gens, 1, nv, cfg)?;
        if !r.certified {
            return Err(Error::Uncertified { what: "colength of the submaximal minors".into(), order: r.certified_at });
        }
        r.dim
    };
    Ok(SingularMilnor { mu_f: mu_f.dim, colength, mu: mu_f.dim as i64 - colength as i64 })
}
