//! Minors, Pfaffians and the generator vectors of codimension 2 and 3 ideals.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{MatrixGerm, MatrixKind};
use crate::ring::Poly;
use crate::scalar::binomial;

/// A strictly increasing list of positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    /// All increasing subsets of `0..n` of size `k`, in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if cur.len() == k {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for i in start..n {
                if n - i < k - cur.len() {
                    break;
                }
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }
}

/// Determinant by Laplace expansion along the first row.
pub fn det(e: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = e.len();
    let cols: Vec<usize> = (0..n).collect();
    det_sub(e, 0, &cols, nvars)
}

fn det_sub(e: &[Vec<Poly>], row: usize, cols: &[usize], nvars: usize) -> Poly {
    if cols.is_empty() {
        return Poly::one(nvars);
    }
    if cols.len() == 1 {
        return e[row][cols[0]].clone();
    }
    let mut acc = Poly::zero(nvars);
    for (k, &c) in cols.iter().enumerate() {
        if e[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = det_sub(e, row + 1, &rest, nvars);
        let t = e[row][c].mul(&sub);
        acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// Pfaffian of the principal submatrix on `idx` (even length), by expansion
/// along the first index.
pub fn pfaffian_sub(e: &[Vec<Poly>], idx: &[usize], nvars: usize) -> Poly {
    if idx.is_empty() {
        return Poly::one(nvars);
    }
    if idx.len() % 2 == 1 {
        return Poly::zero(nvars);
    }
    let first = idx[0];
    let mut acc = Poly::zero(nvars);
    for (k, &j) in idx.iter().enumerate().skip(1) {
        if e[first][j].is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != j).collect();
        let t = e[first][j].mul(&pfaffian_sub(e, &rest, nvars));
        acc = if k % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

pub fn pfaffian(e: &[Vec<Poly>], nvars: usize) -> Poly {
    let idx: Vec<usize> = (0..e.len()).collect();
    pfaffian_sub(e, &idx, nvars)
}

/// All `t x t` minors with their row and column indices.
pub fn minors(a: &MatrixGerm, t: usize) -> Result<Vec<(MultiIndex, MultiIndex, Poly)>> {
    let (m, n) = (a.rows(), a.cols());
    if t == 0 || t > m.min(n) {
        return Err(Error::Range(alloc::format!("minor size {} outside 1..={}", t, m.min(n))));
    }
    let nv = a.nvars();
    let e = a.entries();
    let mut out = Vec::new();
    for r in MultiIndex::all(m, t) {
        for c in MultiIndex::all(n, t) {
            let sub: Vec<Vec<Poly>> = r.0.iter().map(|&i| c.0.iter().map(|&j| e[i][j].clone()).collect()).collect();
            let d = det(&sub, nv);
            out.push((r.clone(), c, d));
        }
    }
    Ok(out)
}

/// Pfaffians of all principal `2s x 2s` submatrices.
pub fn pfaffians(a: &MatrixGerm, s: usize) -> Result<Vec<(MultiIndex, Poly)>> {
    if a.kind() != MatrixKind::Skew {
        return Err(Error::Kind("Pfaffians need a skew matrix".into()));
    }
    let m = a.rows();
    if s == 0 || 2 * s > m {
        return Err(Error::Range(alloc::format!("Pfaffian half-size {} outside 1..={}", s, m / 2)));
    }
    let nv = a.nvars();
    Ok(MultiIndex::all(m, 2 * s)
        .into_iter()
        .map(|idx| {
            let p = pfaffian_sub(a.entries(), &idx.0, nv);
            (idx, p)
        })
        .collect())
}

/// Expected codimension of the ideal of `t`-minors (general, symmetric) or
/// `2t`-Pfaffians (skew).
pub fn expected_codim(kind: MatrixKind, m: usize, n: usize, t: usize) -> Result<usize> {
    let bad = || Error::Range(alloc::format!("invalid sizes for {}: {}x{}, {}", kind, m, n, t));
    match kind {
        MatrixKind::General => {
            if t == 0 || t > m.min(n) {
                return Err(bad());
            }
            Ok((m - t + 1) * (n - t + 1))
        }
        MatrixKind::Symmetric => {
            if m != n || t == 0 || t > n {
                return Err(bad());
            }
            Ok((n - t + 2) * (n - t + 1) / 2)
        }
        MatrixKind::Skew => {
            if m != n || t == 0 || 2 * t > m {
                return Err(bad());
            }
            Ok((m - 2 * t + 2) * (m - 2 * t + 1) / 2)
        }
    }
}

/// Number of generators of the minors (or Pfaffian) ideal, counted with repetition.
pub fn generator_count(kind: MatrixKind, m: usize, n: usize, t: usize) -> i64 {
    match kind {
        MatrixKind::Skew => binomial(m as i64, 2 * t as i64),
        _ => binomial(m as i64, t as i64) * binomial(n as i64, t as i64),
    }
}

/// For an `m x (m+1)` matrix: `f_i = (-1)^i` times the maximal minor without
/// column `i` (0-based), so that `A f = 0`.
pub fn hilbert_burch_vector(a: &MatrixGerm) -> Result<Vec<Poly>> {
    let (m, n) = (a.rows(), a.cols());
    if a.kind() != MatrixKind::General || n != m + 1 {
        return Err(Error::Shape(alloc::format!("expected a general m x (m+1) matrix, got {}x{}", m, n)));
    }
    let nv = a.nvars();
    Ok((0..n)
        .map(|i| {
            let sub: Vec<Vec<Poly>> =
                a.entries().iter().map(|r| (0..n).filter(|&j| j != i).map(|j| r[j].clone()).collect()).collect();
            let d = det(&sub, nv);
            if i % 2 == 0 {
                d
            } else {
                d.neg()
            }
        })
        .collect())
}

/// For a skew `(2k+1) x (2k+1)` matrix: `f_i = (-1)^i` times the Pfaffian with
/// row and column `i` deleted (0-based), so that `A f = 0`.
pub fn buchsbaum_eisenbud_vector(a: &MatrixGerm) -> Result<Vec<Poly>> {
    if a.kind() != MatrixKind::Skew {
        return Err(Error::Kind("expected a skew matrix".into()));
    }
    let m = a.rows();
    if m.is_multiple_of(2) {
        return Err(Error::Shape("expected odd size".into()));
    }
    let nv = a.nvars();
    Ok((0..m)
        .map(|i| {
            let idx: Vec<usize> = (0..m).filter(|&j| j != i).collect();
            let p = pfaffian_sub(a.entries(), &idx, nv);
            if i % 2 == 0 {
                p
            } else {
                p.neg()
            }
        })
        .collect())
}

/// `A v` for a column vector `v`.
pub fn apply(a: &MatrixGerm, v: &[Poly]) -> Vec<Poly> {
    let nv = a.nvars();
    a.entries()
        .iter()
        .map(|r| r.iter().zip(v).fold(Poly::zero(nv), |acc, (x, y)| acc.add(&x.mul(y))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_poly, VariableSet};

    #[test]
    fn worked_minors() {
        let v = VariableSet::parse("x, y, z, w").unwrap();
        let a = MatrixGerm::parse(&v, MatrixKind::General, &[&["x", "y"], &["z", "w"]]).unwrap();
        let ms = minors(&a, 2).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].2, parse_poly("x*w - y*z", &v).unwrap());
        assert_eq!(minors(&a, 1).unwrap().len(), 4);
        assert!(minors(&a, 3).is_err());
    }

    #[test]
    fn three_axes_relations() {
        let v = VariableSet::parse("x, y, z").unwrap();
        let a = MatrixGerm::parse(&v, MatrixKind::General, &[&["x", "0", "z"], &["0", "y", "z"]]).unwrap();
        let f = hilbert_burch_vector(&a).unwrap();
        let want: Vec<Poly> = ["-y*z", "-x*z", "x*y"].iter().map(|s| parse_poly(s, &v).unwrap()).collect();
        assert_eq!(f, want);
        assert!(apply(&a, &f).iter().all(Poly::is_zero));
        let ms: Vec<Poly> = minors(&a, 2).unwrap().into_iter().map(|t| t.2).collect();
        let want: Vec<Poly> = ["x*y", "x*z", "-y*z"].iter().map(|s| parse_poly(s, &v).unwrap()).collect();
        assert_eq!(ms, want);
    }

    #[test]
    fn small_pfaffians() {
        let v = VariableSet::parse("a, b, c").unwrap();
        let s3 = MatrixGerm::parse(&v, MatrixKind::Skew, &[&["0", "a", "b"], &["-a", "0", "c"], &["-b", "-c", "0"]]).unwrap();
        let f = buchsbaum_eisenbud_vector(&s3).unwrap();
        let want: Vec<Poly> = ["c", "-b", "a"].iter().map(|s| parse_poly(s, &v).unwrap()).collect();
        assert_eq!(f, want);
        assert!(apply(&s3, &f).iter().all(Poly::is_zero));
        let one = pfaffians(&s3, 1).unwrap();
        assert_eq!(one[0].1, parse_poly("a", &v).unwrap());
        let g = MatrixGerm::parse(&v, MatrixKind::General, &[&["a"]]).unwrap();
        assert!(pfaffians(&g, 1).is_err());
    }

    #[test]
    fn generic_four_by_four() {
        let names = ["a12", "a13", "a14", "a23", "a24", "a34"];
        let v = VariableSet::new(&names).unwrap();
        let upper: Vec<Poly> = (0..6).map(|i| Poly::var(6, i)).collect();
        let a = MatrixGerm::skew_from_upper(v.clone(), 4, upper).unwrap();
        let p = pfaffians(&a, 2).unwrap();
        assert_eq!(p[0].1, parse_poly("a12*a34 - a13*a24 + a14*a23", &v).unwrap());
    }

    #[test]
    fn block_pfaffian_is_det() {
        let v = VariableSet::parse("p, q, r, s").unwrap();
        let a = MatrixGerm::parse(
            &v,
            MatrixKind::Skew,
            &[&["0", "0", "p", "q"], &["0", "0", "r", "s"], &["-p", "-r", "0", "0"], &["-q", "-s", "0", "0"]],
        )
        .unwrap();
        // Pf [[0, B], [-B^T, 0]] = (-1)^(k(k-1)/2) det B for k x k blocks
        assert_eq!(pfaffian(a.entries(), 4), parse_poly("q*r - p*s", &v).unwrap());
    }

    #[test]
    fn codims() {
        assert_eq!(expected_codim(MatrixKind::General, 2, 3, 2), Ok(2));
        assert_eq!(expected_codim(MatrixKind::Symmetric, 3, 3, 2), Ok(3));
        assert_eq!(expected_codim(MatrixKind::Skew, 4, 4, 2), Ok(1));
        assert!(expected_codim(MatrixKind::Skew, 4, 4, 3).is_err());
    }
}
