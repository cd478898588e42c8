use alloc::vec::Vec;

use super::check_vanishes;
use crate::error::{Error, Result};
use crate::jetlin::{colength_with, ColengthConfig, ColengthResult, ModuleElement};
use crate::ring::Poly;

/// Generators of the Jacobian ideal.
pub fn jacobian_ideal(f: &Poly) -> Vec<ModuleElement> {
    (0..f.nvars()).map(|i| ModuleElement::scalar(f.partial(i))).collect()
}

/// Milnor number: colength of the Jacobian ideal.
pub fn milnor(f: &Poly, cfg: &ColengthConfig) -> Result<ColengthResult> {
    check_vanishes(f)?;
    colength_with(&jacobian_ideal(f), 1, f.nvars(), cfg)
}

/// Tjurina number: colength of `f` together with its partials.
pub fn tjurina_number(f: &Poly, cfg: &ColengthConfig) -> Result<ColengthResult> {
    check_vanishes(f)?;
    let mut gens = jacobian_ideal(f);
    gens.push(ModuleElement::scalar(f.clone()));
    colength_with(&gens, 1, f.nvars(), cfg)
}

/// Milnor numbers of a boundary singularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMilnorTriple {
    pub mu_f: usize,
    pub mu_restricted: usize,
    pub mu_boundary: usize,
    pub certified_at: [u32; 3],
}

/// `mu(f)`, `mu(f restricted to x_b = 0)` and the colength of
/// `<x_b df/dx_b, df/dx_i (i != b)>`; the first two add up to the third.
pub fn boundary_milnor(f: &Poly, boundary: usize, cfg: &ColengthConfig) -> Result<BoundaryMilnorTriple> {
    check_vanishes(f)?;
    let p = f.nvars();
    if boundary >= p {
        return Err(Error::Range("boundary variable out of range".into()));
    }
    if p < 2 {
        return Err(Error::Range("a boundary singularity needs at least two variables".into()));
    }
    let need = |r: ColengthResult, what: &str| -> Result<ColengthResult> {
        if r.certified {
            Ok(r)
        } else {
            Err(Error::Uncertified { what: what.into(), order: r.certified_at })
        }
    };
    let mu_f = need(milnor(f, cfg)?, "Milnor number")?;
    let restricted = f.restrict_zero(boundary);
    let mu_r = need(milnor(&restricted, cfg)?, "Milnor number of the restriction")?;
    let mut gens = jacobian_ideal(f);
    gens[boundary] = ModuleElement::scalar(f.partial(boundary).mul(&Poly::var(p, boundary)));
    let mu_b = need(colength_with(&gens, 1, p, cfg)?, "boundary Milnor number")?;
    if mu_f.dim + mu_r.dim != mu_b.dim {
        return Err(Error::Identity(alloc::format!(
            "{} + {} != {} for the boundary Milnor numbers",
            mu_f.dim,
            mu_r.dim,
            mu_b.dim
        )));
    }
    Ok(BoundaryMilnorTriple {
        mu_f: mu_f.dim,
        mu_restricted: mu_r.dim,
        mu_boundary: mu_b.dim,
        certified_at: [mu_f.certified_at, mu_r.certified_at, mu_b.certified_at],
    })
}
