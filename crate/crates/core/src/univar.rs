//! Dense univariate polynomials over the rationals, constant term first.

use alloc::vec::Vec;

use crate::ring::Poly;
use crate::scalar::Rational;

pub(crate) fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = trim(a.to_vec());
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let q = r.last().unwrap() / lb;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub_mul(&q, c);
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

pub(crate) fn derivative(a: &[Rational]) -> Vec<Rational> {
    (1..a.len()).map(|i| &a[i] * &Rational::from_int(i as i64)).collect()
}

/// Coefficients of a polynomial in one variable.
pub(crate) fn from_poly(p: &Poly) -> Vec<Rational> {
    assert_eq!(p.nvars(), 1);
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exps()[0] as usize;
        if out.len() <= e {
            out.resize(e + 1, Rational::zero());
        }
        out[e] = c.clone();
    }
    trim(out)
}
