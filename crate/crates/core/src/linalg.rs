//! Small dense linear algebra over the rationals.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::Rational;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rational>>,
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn from_rows(data: Vec<Vec<Rational>>, cols: usize) -> Self {
        debug_assert!(data.iter().all(|r| r.len() == cols));
        Dense { rows: data.len(), cols, data }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else { continue };
            self.data.swap(r, p);
            let inv = self.data[r][c].recip();
            for v in self.data[r].iter_mut() {
                *v = &*v * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self.data[i][c].is_zero() {
                    let f = self.data[i][c].clone();
                    for j in c..self.cols {
                        if !self.data[r][j].is_zero() {
                            let d = &f * &self.data[r][j];
                            self.data[i][j] -= &d;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m.data[i][free];
            }
            out.push(v);
        }
        out
    }

    /// One solution of `M x = b`, if any.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let mut aug = Dense::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.data[i][..self.cols].clone_from_slice(&self.data[i]);
            aug.data[i][self.cols] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.data[i][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Dense> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Dense::zeros(n, 2 * n);
        for i in 0..n {
            aug.data[i][..n].clone_from_slice(&self.data[i]);
            aug.data[i][n + i] = Rational::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Dense::from_rows(aug.data.into_iter().map(|r| r[n..].to_vec()).collect(), n))
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Rational::zero() };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            let inv = a[c][c].recip();
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] * &inv;
                for j in c..n {
                    let d = &f * &a[c][j];
                    a[i][j] -= &d;
                }
            }
        }
        det
    }
}
