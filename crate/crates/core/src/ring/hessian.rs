use alloc::vec::Vec;

use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::linalg::Dense;
use crate::scalar::Rational;

/// The matrix of second partials at the origin.
pub fn hessian_at_origin(f: &Poly) -> Dense {
    let n = f.nvars();
    let mut h = Dense::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut e = alloc::vec![0u32; n];
            e[i] += 1;
            e[j] += 1;
            let c = f.coeff(&Monomial(e));
            // d^2/dx_i dx_j of c*x_i*x_j is c (i != j) or 2c (i == j)
            h.data[i][j] = if i == j { &c * &Rational::from_int(2) } else { c };
        }
    }
    h
}

/// Rank of the Hessian at the origin together with a rational kernel basis.
pub fn hessian_rank_and_kernel(f: &Poly) -> Result<(usize, Vec<Vec<Rational>>)> {
    if f.linear_part().iter().any(|c| !c.is_zero()) {
        return Err(Error::NonzeroLinearPart);
    }
    let h = hessian_at_origin(f);
    let kernel = h.kernel();
    Ok((f.nvars() - kernel.len(), kernel))
}
