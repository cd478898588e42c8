use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::milnor::milnor;
use crate::error::{Error, Result};
use crate::jetlin::ColengthConfig;
use crate::ring::{hessian_rank_and_kernel, Poly};
use crate::scalar::Rational;
use crate::univar::{derivative, gcd, trim};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
    Smooth,
    NotSimple,
    NotIsolated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingularityLabel {
    pub family: Family,
    pub index: Option<u32>,
}

impl SingularityLabel {
    pub fn new(family: Family, index: Option<u32>) -> Result<Self> {
        let ok = match (family, index) {
            (Family::A, Some(k)) => k >= 1,
            (Family::D, Some(k)) => k >= 4,
            (Family::E, Some(k)) => (6..=8).contains(&k),
            (Family::A | Family::D | Family::E, None) => false,
            (_, i) => i.is_none(),
        };
        if ok {
            Ok(SingularityLabel { family, index })
        } else {
            Err(Error::Range(alloc::format!("invalid singularity label {:?} {:?}", family, index)))
        }
    }

    pub fn simple(family: Family, k: u32) -> Result<Self> {
        Self::new(family, Some(k))
    }

    pub fn plain(family: Family) -> Self {
        SingularityLabel { family, index: None }
    }

    pub fn is_ade(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for SingularityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.index) {
            (Family::A, Some(k)) => write!(f, "A_{k}"),
            (Family::D, Some(k)) => write!(f, "D_{k}"),
            (Family::E, Some(k)) => write!(f, "E_{k}"),
            (Family::Smooth, _) => f.write_str("smooth"),
            (Family::NotSimple, _) => f.write_str("not simple"),
            (Family::NotIsolated, _) => f.write_str("not isolated"),
            (fam, None) => write!(f, "{fam:?}"),
        }
    }
}

impl FromStr for SingularityLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "smooth" => return Ok(Self::plain(Family::Smooth)),
            "not simple" | "not-simple" => return Ok(Self::plain(Family::NotSimple)),
            "not isolated" | "not-isolated" => return Ok(Self::plain(Family::NotIsolated)),
            _ => {}
        }
        let bad = || Error::Syntax { pos: 1, msg: alloc::format!("bad singularity label '{t}'") };
        let mut chars = t.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rest: String = chars.collect();
        let digits = rest.strip_prefix('_').unwrap_or(&rest);
        let k: u32 = digits.parse().map_err(|_| bad())?;
        Self::new(family, Some(k))
    }
}

/// Number of distinct linear factors of a binary cubic `sum c_i s^i t^(3-i)`,
/// or `None` for the zero form.
pub fn binary_cubic_factor_count(coeffs: [Rational; 4]) -> Option<usize> {
    // dehomogenize at t = 1; a drop in degree is a root at infinity
    let g = trim(coeffs.to_vec());
    if g.is_empty() {
        return None;
    }
    let d = g.len() - 1;
    let h = gcd(&g, &derivative(&g));
    let sqfree = d + 1 - h.len();
    Some(sqfree + usize::from(d < 3))
}

pub fn ade_recognize(f: &Poly, cfg: &ColengthConfig) -> Result<SingularityLabel> {
    let mu = milnor(f, cfg)?;
    if !mu.certified {
        return Ok(SingularityLabel::plain(Family::NotIsolated));
    }
    if mu.dim == 0 {
        return Ok(SingularityLabel::plain(Family::Smooth));
    }
    let m = mu.dim as u32;
    let (_, kernel) = hessian_rank_and_kernel(f)?;
    match kernel.len() {
        0 | 1 => SingularityLabel::simple(Family::A, m),
        2 => {
            let cubic = f.homogeneous_part(3);
            let images: Vec<Poly> = (0..f.nvars())
                .map(|i| {
                    let s = Poly::var(2, 0).scale(&kernel[0][i]);
                    let t = Poly::var(2, 1).scale(&kernel[1][i]);
                    s.add(&t)
                })
                .collect();
            let g = cubic.compose(&images, None);
            let coeffs = [0u32, 1, 2, 3].map(|i| g.coeff(&crate::ring::Monomial(alloc::vec![i, 3 - i])));
            match binary_cubic_factor_count(coeffs) {
                None => Ok(SingularityLabel::plain(Family::NotSimple)),
                Some(n) if n >= 2 => SingularityLabel::simple(Family::D, m),
                Some(_) if (6..=8).contains(&m) => SingularityLabel::simple(Family::E, m),
                Some(_) => Ok(SingularityLabel::plain(Family::NotSimple)),
            }
        }
        _ => Ok(SingularityLabel::plain(Family::NotSimple)),
    }
}
