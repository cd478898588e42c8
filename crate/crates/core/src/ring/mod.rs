//! Sparse multivariate polynomials with exact rational coefficients.

mod hessian;
mod parse;
mod weights;

pub use hessian::hessian_rank_and_kernel;
pub use parse::{parse_poly, IntExpr};
pub use weights::{weighted_degree_spectrum, WeightVector};

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Ordered list of distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Variables("at least one variable is required".into()));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim();
            if !is_identifier(n) {
                return Err(Error::Variables(alloc::format!("`{}` is not an identifier", n)));
            }
            if out.iter().any(|m| m == n) {
                return Err(Error::Variables(alloc::format!("duplicate variable `{}`", n)));
            }
            out.push(n.to_string());
        }
        Ok(VariableSet { names: out })
    }

    /// Parses a comma separated list such as `x, y, z`.
    pub fn parse(list: &str) -> Result<Self> {
        let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Self::new(&names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Appends variables, renaming to avoid clashes; returns the new set and the chosen names.
    pub fn extend_fresh(&self, base: &str, count: usize) -> (VariableSet, Vec<String>) {
        let mut names = self.names.clone();
        let mut added = Vec::new();
        for i in 0..count {
            let mut cand = if count == 1 { base.to_string() } else { alloc::format!("{}{}", base, i + 1) };
            let mut bump = 0;
            while names.contains(&cand) {
                bump += 1;
                cand = alloc::format!("{}_{}", base, bump + i);
            }
            names.push(cand.clone());
            added.push(cand);
        }
        (VariableSet { names }, added)
    }
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(", "))
    }
}

/// Exponent vector of a monomial.
///
/// Ordered by total degree first, then lexicographically with heavier powers of
/// earlier variables first: `1 < x < y < x^2 < x*y < y^2 < ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All monomials of exactly degree `d` in `nvars` variables, in ascending order.
    pub fn of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// All monomials of degree `< n`, ascending.
    pub fn below_degree(nvars: usize, n: u32) -> Vec<Monomial> {
        (0..n).flat_map(|d| Monomial::of_degree(nvars, d)).collect()
    }

    pub fn display(&self, vars: &VariableSet) -> String {
        let mut s = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(vars.name(i));
            if e > 1 {
                let _ = write!(s, "^{}", e);
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

/// A polynomial in a fixed number of variables.
///
/// The variable names live in a [`VariableSet`] held by the caller.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| alloc::format!("x{}", i + 1)).collect();
        let vars = VariableSet { names };
        f.write_str(&self.display(&vars))
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(nvars: usize, it: I) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in it {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Highest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term (the order); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Coefficients of the degree-one part, one per variable.
    pub fn linear_part(&self) -> Vec<Rational> {
        (0..self.nvars).map(|i| self.coeff(&Monomial::var(self.nvars, i))).collect()
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Drops every term of total degree above `n`.
    pub fn jet(&self, n: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().take_while(|(m, _)| m.degree() <= n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Rational::from_int(-1))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_trunc(other, None)
    }

    /// Product with all terms of degree above `bound` discarded.
    pub fn mul_trunc(&self, other: &Poly, bound: Option<u32>) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            let da = a.degree();
            for (b, cb) in &other.terms {
                if let Some(n) = bound {
                    if da + b.degree() > n {
                        break;
                    }
                }
                out.add_term(a.mul(b), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        self.pow_trunc(e, None)
    }

    pub fn pow_trunc(&self, e: u32, bound: Option<u32>) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_trunc(&base, bound);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_trunc(&base, bound);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, &(c * &Rational::from_int(e as i64)));
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`; the images share a common
    /// (possibly different) variable count. Terms above `bound` are dropped.
    pub fn compose(&self, images: &[Poly], bound: Option<u32>) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Poly::zero(target);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_trunc(&images[i], bound);
                    powers[i].push(next);
                }
                t = t.mul_trunc(&powers[i][e as usize], bound);
                if t.is_zero() {
                    break;
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Replaces variable `i` by `value` (same variable count).
    pub fn substitute(&self, i: usize, value: &Poly, bound: Option<u32>) -> Poly {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|j| if j == i { value.clone() } else { Poly::var(self.nvars, j) })
            .collect();
        self.compose(&images, bound)
    }

    /// Moves the polynomial into `target` variables, sending variable `i` to `map[i]`.
    pub fn remap(&self, map: &[usize], target: usize) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Appends `extra` unused variables at the end.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap(&map, self.nvars + extra)
    }

    /// Sets variable `i` to zero and removes it from the variable list.
    pub fn restrict_zero(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            if m.0[i] != 0 {
                continue;
            }
            let mut e = m.0.clone();
            e.remove(i);
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Whether variable `i` occurs in some term.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &point[i].pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Canonical text form, highest-degree terms first.
    pub fn display(&self, vars: &VariableSet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.degree() > 0;
            if !mono {
                let _ = write!(s, "{}", a);
            } else if a.is_one() {
                s.push_str(&m.display(vars));
            } else {
                let _ = write!(s, "{}*{}", a, m.display(vars));
            }
        }
        s
    }
}

impl core::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl core::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl core::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl core::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}
