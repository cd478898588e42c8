use alloc::vec::Vec;

use super::check_vanishes;
use super::milnor::milnor;
use crate::detideal::{det, MultiIndex};
use crate::error::{Error, Result};
use crate::jetlin::{colength_with, ColengthConfig, ModuleElement};
use crate::ring::Poly;
use crate::scalar::Rational;

/// Lê–Greuel recursion along the given order of equations; `None` if some
/// colength is not certified.
fn recursion(fs: &[Poly], cfg: &ColengthConfig) -> Result<Option<usize>> {
    let nv = fs[0].nvars();
    let first = milnor(&fs[0], cfg)?;
    if !first.certified {
        return Ok(None);
    }
    let mut prev = first.dim;
    for k in 2..=fs.len() {
        let jac: Vec<Vec<Poly>> = fs[..k].iter().map(|f| (0..nv).map(|i| f.partial(i)).collect()).collect();
        let mut gens: Vec<ModuleElement> = fs[..k - 1].iter().cloned().map(ModuleElement::scalar).collect();
        if k <= nv {
            for cols in MultiIndex::all(nv, k) {
                let sub: Vec<Vec<Poly>> = jac.iter().map(|r| cols.0.iter().map(|&j| r[j].clone()).collect()).collect();
                gens.push(ModuleElement::scalar(det(&sub, nv)));
            }
        }
        let c = colength_with(&gens, 1, nv, cfg)?;
        if !c.certified {
            return Ok(None);
        }
        if c.dim < prev {
            return Ok(None);
        }
        prev = c.dim - prev;
    }
    Ok(Some(prev))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Equation lists generating the same ideal, tried in order.
fn candidates(fs: &[Poly]) -> Vec<Vec<Poly>> {
    let c = fs.len();
    let mut out: Vec<Vec<Poly>> = Vec::new();
    for p in permutations(c) {
        out.push(p.iter().map(|&i| fs[i].clone()).collect());
    }
    for scale in [1i64, -1, 2, 3] {
        let s = Rational::from_int(scale);
        for i in 0..c {
            for j in 0..c {
                if i == j {
                    continue;
                }
                let mut g = fs.to_vec();
                g[i] = g[i].add(&fs[j].scale(&s));
                for p in permutations(c) {
                    out.push(p.iter().map(|&k| g[k].clone()).collect());
                }
            }
        }
    }
    out
}

/// Milnor number of an isolated complete intersection, with default limits.
pub fn milnor_icis(fs: &[Poly], cfg: &ColengthConfig) -> Result<usize> {
    milnor_icis_with(fs, cfg, 20)
}

/// As [`milnor_icis`]; equation orders that fail to certify below
/// `trial_order` are abandoned in favour of the next candidate.
pub fn milnor_icis_with(fs: &[Poly], cfg: &ColengthConfig, trial_order: u32) -> Result<usize> {
    if fs.is_empty() {
        return Err(Error::Shape("no equations".into()));
    }
    for f in fs {
        check_vanishes(f)?;
    }
    if fs.len() == 1 {
        let r = milnor(&fs[0], cfg)?;
        return r.value().ok_or(Error::Uncertified { what: "Milnor number".into(), order: r.certified_at });
    }
    let trial = ColengthConfig { max_order: trial_order.min(cfg.max_order).max(2), ..*cfg };
    for cand in candidates(fs) {
        if let Some(mu) = recursion(&cand, &trial)? {
            return Ok(mu);
        }
    }
    if trial.max_order < cfg.max_order {
        if let Some(mu) = recursion(fs, cfg)? {
            return Ok(mu);
        }
    }
    Err(Error::Uncertified { what: "Le-Greuel recursion".into(), order: cfg.max_order })
}
