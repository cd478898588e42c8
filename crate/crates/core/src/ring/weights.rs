use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Positive weights per variable together with a weighted degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    weights: Vec<Rational>,
    degree: Rational,
}

impl WeightVector {
    pub fn new(weights: Vec<Rational>, degree: Rational) -> Result<Self> {
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::Range("weights must be positive".into()));
        }
        Ok(WeightVector { weights, degree })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn degree(&self) -> &Rational {
        &self.degree
    }

    pub fn weigh(&self, m: &Monomial) -> Rational {
        let mut acc = Rational::zero();
        for (w, &e) in self.weights.iter().zip(m.exps()) {
            if e > 0 {
                acc += &(w * &Rational::from_int(e as i64));
            }
        }
        acc
    }
}

/// The set of weighted degrees of the terms of `f`.
pub fn weighted_degree_spectrum(f: &Poly, w: &WeightVector) -> Result<BTreeSet<Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if w.weights.len() != f.nvars() {
        return Err(Error::Shape("weight vector length differs from variable count".into()));
    }
    Ok(f.terms().map(|(m, _)| w.weigh(m)).collect())
}
