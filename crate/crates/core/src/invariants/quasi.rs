use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::fm::{find_point, Strict};
use crate::linalg::Dense;
use crate::matrix::MatrixGerm;
use crate::ring::{Monomial, Poly, WeightVector};
use crate::scalar::{big_gcd, big_lcm, Rational};

/// Solves `M x = b` with the extra requirement `x_i > 0` for `i in positive`.
fn positive_solution(m: &Dense, b: &[Rational], positive: &[usize]) -> Option<Vec<Rational>> {
    let x0 = m.solve(b)?;
    let kernel = m.kernel();
    let k = kernel.len();
    let cons: Vec<Strict> = positive
        .iter()
        .map(|&i| Strict { coeffs: kernel.iter().map(|v| v[i].clone()).collect(), constant: x0[i].clone() })
        .collect();
    let t = find_point(k, &cons)?;
    let mut x = x0;
    for (v, ti) in kernel.iter().zip(&t) {
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += &(vi * ti);
        }
    }
    Some(x)
}

/// Scales rationals to coprime integers (same ratios).
fn integral(values: &[Rational]) -> Vec<Rational> {
    let mut l = BigInt::one();
    for v in values {
        l = big_lcm(&l, &v.denom());
    }
    let ints: Vec<BigInt> = values.iter().map(|v| v.numer() * (&l / v.denom())).collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = big_gcd(&g, &i.abs());
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    ints.into_iter().map(|i| Rational::from(i / &g)).collect()
}

/// Positive weights making every term of `f` of equal weighted degree,
/// scaled to coprime integers together with the degree.
pub fn quasi_homogeneous(f: &Poly) -> Option<WeightVector> {
    if f.is_zero() {
        return None;
    }
    let p = f.nvars();
    let exps: BTreeSet<&Monomial> = f.terms().map(|(m, _)| m).collect();
    let rows: Vec<Vec<Rational>> =
        exps.iter().map(|m| m.exps().iter().map(|&e| Rational::from_int(e as i64)).collect()).collect();
    let b = alloc::vec![Rational::one(); rows.len()];
    let m = Dense::from_rows(rows, p);
    let all: Vec<usize> = (0..p).collect();
    let w = positive_solution(&m, &b, &all)?;
    let mut v = w;
    v.push(Rational::one());
    let ints = integral(&v);
    let degree = ints[p].clone();
    WeightVector::new(ints[..p].to_vec(), degree).ok()
}

/// Weights with row and column degrees: entry `(i, j)` is weighted
/// homogeneous of degree `rows[i] + cols[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixWeights {
    pub weights: Vec<Rational>,
    pub rows: Vec<Rational>,
    pub cols: Vec<Rational>,
}

pub fn quasi_homogeneous_matrix(a: &MatrixGerm) -> Option<MatrixWeights> {
    let (p, m, n) = (a.nvars(), a.rows(), a.cols());
    let nu = p + m + n;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut b = Vec::new();
    let mut any = false;
    for i in 0..m {
        for j in 0..n {
            let e = a.entry(i, j);
            let mons: BTreeSet<&Monomial> = e.terms().map(|(mm, _)| mm).collect();
            for mono in mons {
                any = true;
                let mut r = alloc::vec![Rational::zero(); nu];
                for (k, &x) in mono.exps().iter().enumerate() {
                    r[k] = Rational::from_int(x as i64);
                }
                r[p + i] = Rational::from_int(-1);
                r[p + m + j] = Rational::from_int(-1);
                rows.push(r);
                b.push(Rational::zero());
            }
        }
    }
    if !any {
        return None;
    }
    // weights sum to one, excluding the trivial solution
    let mut norm = alloc::vec![Rational::zero(); nu];
    for v in norm.iter_mut().take(p) {
        *v = Rational::one();
    }
    rows.push(norm);
    b.push(Rational::one());
    let dm = Dense::from_rows(rows, nu);
    let pos: Vec<usize> = (0..p).collect();
    let mut x = positive_solution(&dm, &b, &pos)?;
    // shift so that the smallest row degree is zero
    let shift = x[p..p + m].iter().min().cloned().unwrap_or_default();
    for v in x[p..p + m].iter_mut() {
        *v -= &shift;
    }
    for v in x[p + m..].iter_mut() {
        *v += &shift;
    }
    let ints = integral(&x);
    Some(MatrixWeights { weights: ints[..p].to_vec(), rows: ints[p..p + m].to_vec(), cols: ints[p + m..].to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::MatrixKind;
    use crate::ring::{parse_poly, weighted_degree_spectrum, VariableSet};

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn hypersurface_weights() {
        let v = VariableSet::parse("x, y").unwrap();
        let w = quasi_homogeneous(&parse_poly("x^3 + y^4", &v).unwrap()).unwrap();
        assert_eq!(w.weights(), [r(4), r(3)]);
        assert_eq!(w.degree(), &r(12));
        assert!(quasi_homogeneous(&parse_poly("x^3 + y^7 + x^2*y^2", &v).unwrap()).is_none());
        let v4 = VariableSet::parse("x, y, z, w").unwrap();
        let w = quasi_homogeneous(&parse_poly("x*w - y*z", &v4).unwrap()).unwrap();
        assert_eq!(w.weights(), [r(1), r(1), r(1), r(1)]);
        assert_eq!(w.degree(), &r(2));
        // a free variable still gets a positive weight
        let f = parse_poly("x^2 + y^3", &VariableSet::parse("x, y, z").unwrap()).unwrap();
        let w = quasi_homogeneous(&f).unwrap();
        assert_eq!(weighted_degree_spectrum(&f, &w).unwrap().len(), 1);
    }

    fn consistent(a: &MatrixGerm, mw: &MatrixWeights) -> bool {
        let w = WeightVector::new(mw.weights.clone(), Rational::one()).unwrap();
        (0..a.rows()).all(|i| {
            (0..a.cols()).all(|j| {
                let want = &mw.rows[i] + &mw.cols[j];
                a.entry(i, j).terms().all(|(m, _)| w.weigh(m) == want)
            })
        })
    }

    #[test]
    fn matrix_weights() {
        let v = VariableSet::parse("x, y, z").unwrap();
        let a = MatrixGerm::parse(&v, MatrixKind::General, &[&["x", "0", "z"], &["0", "y", "z"]]).unwrap();
        // x and y get independent weights here, so only check consistency
        let mw = quasi_homogeneous_matrix(&a).unwrap();
        assert!(consistent(&a, &mw));
        assert_eq!(mw.rows, [r(0), r(0)]);
        let v2 = VariableSet::parse("x, y").unwrap();
        let b = MatrixGerm::parse(&v2, MatrixKind::General, &[&["x", "y^3"], &["y", "x^2"]]).unwrap();
        let mw = quasi_homogeneous_matrix(&b).unwrap();
        assert!(consistent(&b, &mw));
        assert_eq!(mw.weights, [r(4), r(3)]);
        let c = MatrixGerm::parse(&v2, MatrixKind::General, &[&["x + x^2", "y"], &["y", "x"]]).unwrap();
        assert!(quasi_homogeneous_matrix(&c).is_none());
    }
}
