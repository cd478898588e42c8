//! Fourier–Motzkin elimination for strict linear inequalities.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::Rational;

/// `coeffs . t + constant > 0`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strict {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl Strict {
    fn eval(&self, t: &[Rational]) -> Rational {
        let mut acc = self.constant.clone();
        for (a, x) in self.coeffs.iter().zip(t) {
            if !a.is_zero() {
                acc += &(a * x);
            }
        }
        acc
    }
}

/// A point satisfying every strict inequality, if one exists.
pub fn find_point(nvars: usize, cons: &[Strict]) -> Option<Vec<Rational>> {
    // systems[k] holds the constraints in variables k.. after eliminating 0..k
    let mut systems: Vec<Vec<Strict>> = vec![cons.to_vec()];
    for k in 0..nvars {
        let cur = &systems[k];
        let mut next = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for c in cur {
            let a = &c.coeffs[k];
            if a.is_zero() {
                next.push(c.clone());
            } else if a.is_positive() {
                pos.push(c);
            } else {
                neg.push(c);
            }
        }
        for p in &pos {
            for q in &neg {
                // eliminate t_k: |q_k| * p + p_k * q
                let wp = q.coeffs[k].abs();
                let wq = p.coeffs[k].clone();
                let coeffs: Vec<Rational> =
                    p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| &(&wp * x) + &(&wq * y)).collect();
                let constant = &(&wp * &p.constant) + &(&wq * &q.constant);
                let s = Strict { coeffs, constant };
                if !next.contains(&s) {
                    next.push(s);
                }
            }
        }
        systems.push(next);
    }
    // all variables gone: only constants remain
    if systems[nvars].iter().any(|c| !c.constant.is_positive()) {
        return None;
    }
    let mut t = vec![Rational::zero(); nvars];
    for k in (0..nvars).rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for c in &systems[k] {
            let a = &c.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let mut rest = c.clone();
            rest.coeffs[k] = Rational::zero();
            // a t_k + rest > 0
            let bound = &(-&rest.eval(&t)) / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|l| &bound > l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        }
        t[k] = match (lo, hi) {
            (Some(l), Some(h)) => &(&l + &h) / &Rational::from_int(2),
            (Some(l), None) => {
                let c = &l + &Rational::one();
                if l.is_negative() {
                    Rational::zero().max(c)
                } else {
                    c
                }
            }
            (None, Some(h)) => {
                let c = &h - &Rational::one();
                if h.is_positive() {
                    Rational::zero().min(c)
                } else {
                    c
                }
            }
            (None, None) => Rational::zero(),
        };
    }
    debug_assert!(cons.iter().all(|c| c.eval(&t).is_positive()));
    Some(t)
}
