//! Column indexing for truncated free modules.
//!
//! Column `comp * nmon + rank(x^a)` where `rank` is the position of `x^a` among
//! monomials of degree `< order` in graded-lex order.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ring::Monomial;

pub const MAX_VARS: usize = 16;
pub const MAX_ORDER: u32 = 255;

pub(crate) type Exps = [u8; MAX_VARS];

pub(crate) fn exps_of(m: &Monomial) -> Exps {
    let mut e = [0u8; MAX_VARS];
    for (i, &x) in m.exps().iter().enumerate() {
        e[i] = x.min(255) as u8;
    }
    e
}

pub(crate) fn add_exps(a: &Exps, b: &Exps, nvars: usize) -> Exps {
    let mut e = *a;
    for i in 0..nvars {
        e[i] += b[i];
    }
    e
}

#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub nvars: usize,
    pub rank: usize,
    pub order: u32,
    /// monomials of degree `< order`, ascending
    pub monos: Vec<Exps>,
    /// `degree_start[d]` = index of the first monomial of degree `d`; length `order + 1`
    pub degree_start: Vec<usize>,
    binom: Vec<Vec<u64>>,
}

impl Layout {
    pub fn new(nvars: usize, rank: usize, order: u32) -> Result<Self> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::Range(alloc::format!("between 1 and {} variables are supported", MAX_VARS)));
        }
        if order > MAX_ORDER {
            return Err(Error::Range(alloc::format!("truncation order above {}", MAX_ORDER)));
        }
        let top = order as usize + nvars + 1;
        let mut binom = vec![vec![0u64; nvars + 1]; top + 1];
        for n in 0..=top {
            binom[n][0] = 1;
            for k in 1..=nvars.min(n) {
                binom[n][k] = binom[n - 1][k - 1].saturating_add(if k < n { binom[n - 1][k] } else { 0 });
            }
        }
        let mut monos = Vec::new();
        let mut degree_start = Vec::with_capacity(order as usize + 1);
        for d in 0..order {
            degree_start.push(monos.len());
            for m in Monomial::of_degree(nvars, d) {
                monos.push(exps_of(&m));
            }
        }
        degree_start.push(monos.len());
        Ok(Layout { nvars, rank, order, monos, degree_start, binom })
    }

    pub fn nmon(&self) -> usize {
        self.monos.len()
    }

    pub fn ncols(&self) -> usize {
        self.monos.len() * self.rank
    }

    fn c(&self, n: usize, k: usize) -> usize {
        self.binom[n][k] as usize
    }

    /// Position of a monomial of degree `< order` in the graded-lex list.
    pub fn mono_rank(&self, e: &Exps, degree: u32) -> usize {
        let p = self.nvars;
        // monomials of degree < d: C(d - 1 + p, p)
        let mut r = if degree == 0 { 0 } else { self.c(degree as usize - 1 + p, p) };
        let mut left = degree as usize;
        for i in 0..p.saturating_sub(1) {
            let a = e[i] as usize;
            if left > a {
                r += self.c(left - a - 1 + p - i - 1, p - i - 1);
            }
            left -= a;
        }
        r
    }

    pub fn col(&self, comp: usize, e: &Exps, degree: u32) -> u32 {
        (comp * self.nmon() + self.mono_rank(e, degree)) as u32
    }

    pub fn split(&self, col: u32) -> (usize, usize) {
        let c = col as usize;
        (c / self.nmon(), c % self.nmon())
    }

    pub fn monomial(&self, idx: usize) -> Monomial {
        Monomial(self.monos[idx][..self.nvars].iter().map(|&x| x as u32).collect())
    }

    #[cfg(test)]
    fn mono_degree(&self, idx: usize) -> u32 {
        match self.degree_start.binary_search(&idx) {
            Ok(mut d) => {
                while d + 1 < self.degree_start.len() && self.degree_start[d + 1] == idx {
                    d += 1;
                }
                d as u32
            }
            Err(d) => d as u32 - 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_matches_enumeration() {
        for p in 1..5 {
            let l = Layout::new(p, 1, 7).unwrap();
            for (i, e) in l.monos.iter().enumerate() {
                let d: u32 = e.iter().map(|&x| x as u32).sum();
                assert_eq!(l.mono_rank(e, d), i);
                assert_eq!(l.mono_degree(i), d);
            }
        }
    }
}
