use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Dense;
use crate::ring::Poly;
use crate::scalar::Rational;

fn mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>], nvars: usize, bound: u32) -> Vec<Vec<Poly>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map(Vec::len).unwrap_or(0);
    let mut out = alloc::vec![alloc::vec![Poly::zero(nvars); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = Poly::zero(nvars);
            for l in 0..k {
                if a[i][l].is_zero() || b[l][j].is_zero() {
                    continue;
                }
                acc = acc.add(&a[i][l].mul_trunc(&b[l][j], Some(bound)));
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Inverse of a square polynomial matrix with invertible constant part,
/// modulo `m^N` (all entries of degree `< N`).
pub fn invert_matrix_jet(p: &[Vec<Poly>], order: u32) -> Result<Vec<Vec<Poly>>> {
    let n = p.len();
    if n == 0 || p.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("expected a nonempty square matrix".into()));
    }
    let nvars = p[0][0].nvars();
    let bound = order.saturating_sub(1);
    let mut p0 = Dense::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            p0.data[i][j] = p[i][j].constant_term();
        }
    }
    let inv0 = p0.inverse().ok_or(Error::SingularConstant)?;
    let inv0p: Vec<Vec<Poly>> = inv0
        .data
        .iter()
        .map(|r| r.iter().map(|c| Poly::constant(nvars, c.clone())).collect())
        .collect();
    // N = -P0^{-1} (P - P0), nilpotent modulo m^order
    let mut high: Vec<Vec<Poly>> = p.to_vec();
    for i in 0..n {
        for j in 0..n {
            let c = high[i][j].constant_term();
            high[i][j] = high[i][j].sub(&Poly::constant(nvars, c));
        }
    }
    let mut nil = mat_mul(&inv0p, &high, nvars, bound);
    for row in nil.iter_mut() {
        for e in row.iter_mut() {
            *e = e.scale(&Rational::from_int(-1));
        }
    }
    // sum_k nil^k, then times P0^{-1}
    let mut sum: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Poly::one(nvars) } else { Poly::zero(nvars) }).collect())
        .collect();
    let mut power = sum.clone();
    for _ in 1..order.max(1) {
        power = mat_mul(&power, &nil, nvars, bound);
        if power.iter().all(|r| r.iter().all(Poly::is_zero)) {
            break;
        }
        for i in 0..n {
            for j in 0..n {
                sum[i][j] = sum[i][j].add(&power[i][j]);
            }
        }
    }
    Ok(mat_mul(&sum, &inv0p, nvars, bound))
}
