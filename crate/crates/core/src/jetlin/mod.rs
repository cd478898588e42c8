//! Linear algebra in truncated free modules `O^r / m^N O^r`.
//!
//! A submodule given by generators is realized at order `N` as the span of all
//! shifted generators `x^a * g` that survive truncation. Colengths are only
//! reported as exact once every monomial element of some degree `d < N` lies in
//! that span, which by Nakayama forces `m^d O^r` into the submodule itself.

mod index;
mod invert;

pub use invert::invert_matrix_jet;

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use alloc::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::ring::{Monomial, Poly};
use crate::scalar::Rational;
use index::{add_exps, exps_of, Exps, Layout};

pub use index::{MAX_ORDER, MAX_VARS};

/// An element of a free module: one polynomial per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    pub comps: Vec<Poly>,
}

impl ModuleElement {
    pub fn new(comps: Vec<Poly>) -> Self {
        ModuleElement { comps }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        ModuleElement { comps: vec![Poly::zero(nvars); rank] }
    }

    /// `x^m` in component `comp`.
    pub fn unit(rank: usize, comp: usize, m: Monomial) -> Self {
        let nvars = m.nvars();
        let mut e = Self::zero(rank, nvars);
        e.comps[comp] = Poly::term(m, Rational::one());
        e
    }

    /// A rank-one element.
    pub fn scalar(p: Poly) -> Self {
        ModuleElement { comps: vec![p] }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// Lowest total degree among all terms.
    pub fn order(&self) -> Option<u32> {
        self.comps.iter().filter_map(Poly::order).min()
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        ModuleElement { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        ModuleElement { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> ModuleElement {
        ModuleElement { comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_poly(&self, f: &Poly) -> ModuleElement {
        ModuleElement { comps: self.comps.iter().map(|p| p.mul(f)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> ModuleElement {
        ModuleElement { comps: self.comps.iter().map(|p| p.mul_monomial(m)).collect() }
    }

    pub fn jet(&self, n: u32) -> ModuleElement {
        ModuleElement { comps: self.comps.iter().map(|p| p.jet(n)).collect() }
    }
}

type Row = Vec<(u32, Rational)>;

/// Sparse term of a generator: component, exponents, degree, coefficient.
struct GenTerm {
    comp: usize,
    exps: Exps,
    degree: u32,
    coef: Rational,
}

struct Prepared {
    terms: Vec<GenTerm>,
    order: u32,
}

fn check_shapes(gens: &[ModuleElement], rank: usize, nvars: usize) -> Result<()> {
    for g in gens {
        if g.rank() != rank {
            return Err(Error::Shape(alloc::format!("generator of rank {} in a module of rank {}", g.rank(), rank)));
        }
        if g.comps.iter().any(|p| p.nvars() != nvars) {
            return Err(Error::Shape("generator over a different variable count".into()));
        }
    }
    Ok(())
}

fn prepare(gens: &[ModuleElement]) -> Vec<Prepared> {
    let mut out = Vec::new();
    for g in gens {
        let Some(order) = g.order() else { continue };
        let mut terms = Vec::new();
        for (comp, p) in g.comps.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(GenTerm { comp, exps: exps_of(m), degree: m.degree(), coef: c.clone() });
            }
        }
        out.push(Prepared { terms, order });
    }
    out
}

fn to_row(layout: &Layout, e: &ModuleElement) -> Row {
    let mut row: Row = Vec::new();
    for (comp, p) in e.comps.iter().enumerate() {
        for (m, c) in p.terms() {
            let d = m.degree();
            if d < layout.order {
                row.push((layout.col(comp, &exps_of(m), d), c.clone()));
            }
        }
    }
    row.sort_by_key(|t| t.0);
    row
}

fn from_row(layout: &Layout, row: &[(u32, Rational)]) -> ModuleElement {
    let mut e = ModuleElement::zero(layout.rank, layout.nvars);
    for (col, c) in row {
        let (comp, idx) = layout.split(*col);
        e.comps[comp].add_term(layout.monomial(idx), c);
    }
    e
}

/// `a - f * b`, both sorted; the result is sorted with zeros dropped.
fn axpy(a: &[(u32, Rational)], f: &Rational, b: &[(u32, Rational)]) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -&(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon data: each stored row has a distinct leading column with coefficient 1.
#[derive(Clone, Debug)]
struct Echelon {
    rows: Vec<Row>,
    pivot_row: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl Echelon {
    /// Structured elimination: columns are visited in ascending order, and the
    /// shortest candidate row with a given leading column becomes its pivot.
    fn build(ncols: usize, rows: Vec<Row>) -> Echelon {
        let mut buckets: Vec<Vec<Row>> = vec![Vec::new(); ncols];
        for r in rows {
            if let Some(&(c, _)) = r.first() {
                buckets[c as usize].push(r);
            }
        }
        let mut out = Echelon { rows: Vec::new(), pivot_row: vec![NONE; ncols] };
        for c in 0..ncols {
            let mut cand = core::mem::take(&mut buckets[c]);
            if cand.is_empty() {
                continue;
            }
            let best = (0..cand.len()).min_by_key(|&i| cand[i].len()).unwrap();
            let mut piv = cand.swap_remove(best);
            let lead = piv[0].1.clone();
            if !lead.is_one() {
                let inv = lead.recip();
                for t in piv.iter_mut() {
                    t.1 = &t.1 * &inv;
                }
            }
            for r in cand {
                let f = r[0].1.clone();
                let red = axpy(&r[1..], &f, &piv[1..]);
                if let Some(&(nc, _)) = red.first() {
                    buckets[nc as usize].push(red);
                }
            }
            out.pivot_row[c] = out.rows.len() as u32;
            out.rows.push(piv);
        }
        out
    }

    /// Remainder of `v` after eliminating every pivot column.
    fn reduce(&self, v: &[(u32, Rational)]) -> Row {
        let mut acc: alloc::collections::BTreeMap<u32, Rational> = v.iter().cloned().collect();
        let mut heap: BinaryHeap<Reverse<u32>> = v.iter().map(|t| Reverse(t.0)).collect();
        let mut out = Vec::new();
        let mut last = None;
        while let Some(Reverse(c)) = heap.pop() {
            if last == Some(c) {
                continue;
            }
            last = Some(c);
            let Some(val) = acc.remove(&c) else { continue };
            if val.is_zero() {
                continue;
            }
            let pr = self.pivot_row[c as usize];
            if pr == NONE {
                out.push((c, val));
                continue;
            }
            for (j, a) in &self.rows[pr as usize][1..] {
                let d = &val * a;
                match acc.get_mut(j) {
                    Some(x) => {
                        *x -= &d;
                    }
                    None => {
                        acc.insert(*j, -d);
                        heap.push(Reverse(*j));
                    }
                }
            }
        }
        out
    }

    /// Whether `v` reduces to zero.
    fn contains(&self, v: &[(u32, Rational)]) -> bool {
        // quick reject: the smallest column must be a pivot
        match v.first() {
            None => true,
            Some(&(c, _)) if self.pivot_row[c as usize] == NONE => false,
            _ => self.reduce(v).is_empty(),
        }
    }

    /// Back-substitution into reduced row echelon form.
    fn make_reduced(&mut self) {
        let mut order: Vec<u32> = (0..self.rows.len() as u32).collect();
        order.sort_by_key(|&r| Reverse(self.rows[r as usize][0].0));
        for r in order {
            let row = &self.rows[r as usize];
            if row[1..].iter().all(|(c, _)| self.pivot_row[*c as usize] == NONE) {
                continue;
            }
            let head = row[0].clone();
            let tail = self.reduce(&row[1..]);
            let mut new = Vec::with_capacity(tail.len() + 1);
            new.push(head);
            new.extend(tail);
            self.rows[r as usize] = new;
        }
    }
}

/// Echelonized span of a submodule in the `N`-truncation.
#[derive(Clone, Debug)]
pub struct JetSpan {
    layout: Layout,
    ech: Echelon,
}

impl JetSpan {
    pub fn order(&self) -> u32 {
        self.layout.order
    }

    pub fn rank(&self) -> usize {
        self.layout.rank
    }

    pub fn nvars(&self) -> usize {
        self.layout.nvars
    }

    pub fn dim(&self) -> usize {
        self.ech.rows.len()
    }

    /// Dimension of the truncated ambient module.
    pub fn ambient_dim(&self) -> usize {
        self.layout.ncols()
    }

    /// Pivot positions in ascending index order.
    pub fn pivots(&self) -> Vec<(usize, Monomial)> {
        (0..self.layout.ncols() as u32)
            .filter(|&c| self.ech.pivot_row[c as usize] != NONE)
            .map(|c| {
                let (comp, idx) = self.layout.split(c);
                (comp, self.layout.monomial(idx))
            })
            .collect()
    }

    /// Index positions hit by no pivot, ascending.
    pub fn cobasis(&self) -> Vec<(usize, Monomial)> {
        (0..self.layout.ncols() as u32)
            .filter(|&c| self.ech.pivot_row[c as usize] == NONE)
            .map(|c| {
                let (comp, idx) = self.layout.split(c);
                (comp, self.layout.monomial(idx))
            })
            .collect()
    }

    /// The echelon rows, ordered by leading index.
    pub fn rows(&self) -> Vec<ModuleElement> {
        let mut idx: Vec<&Row> = self.ech.rows.iter().collect();
        idx.sort_by_key(|r| r[0].0);
        idx.into_iter().map(|r| from_row(&self.layout, r)).collect()
    }

    /// Remainder of `v` modulo the span and `m^N`.
    pub fn reduce(&self, v: &ModuleElement) -> Result<ModuleElement> {
        check_shapes(core::slice::from_ref(v), self.layout.rank, self.layout.nvars)?;
        let row = to_row(&self.layout, v);
        Ok(from_row(&self.layout, &self.ech.reduce(&row)))
    }

    pub fn contains(&self, v: &ModuleElement) -> Result<bool> {
        check_shapes(core::slice::from_ref(v), self.layout.rank, self.layout.nvars)?;
        Ok(self.ech.contains(&to_row(&self.layout, v)))
    }

    /// Whether every monomial element of degree `d` lies in the span.
    pub fn contains_degree(&self, d: u32) -> bool {
        contains_degree(&self.layout, &self.ech, d)
    }
}

fn contains_degree(layout: &Layout, ech: &Echelon, d: u32) -> bool {
    if d >= layout.order {
        return true;
    }
    let lo = layout.degree_start[d as usize];
    let hi = layout.degree_start[d as usize + 1];
    let nmon = layout.nmon();
    // cheap pass first: every such column has to be a pivot
    for comp in 0..layout.rank {
        for i in lo..hi {
            if ech.pivot_row[comp * nmon + i] == NONE {
                return false;
            }
        }
    }
    for comp in 0..layout.rank {
        for i in lo..hi {
            let col = (comp * nmon + i) as u32;
            if !ech.contains(&[(col, Rational::one())]) {
                return false;
            }
        }
    }
    true
}

fn build_rows(layout: &Layout, gens: &[Prepared]) -> Vec<Row> {
    let n = layout.order;
    let mut rows = Vec::new();
    for g in gens {
        if g.order >= n {
            continue;
        }
        let top = (n - g.order) as usize;
        for a in 0..top {
            for mi in layout.degree_start[a]..layout.degree_start[a + 1] {
                let alpha = &layout.monos[mi];
                let mut row: Row = Vec::with_capacity(g.terms.len());
                for t in &g.terms {
                    let d = t.degree + a as u32;
                    if d >= n {
                        continue;
                    }
                    let e = add_exps(&t.exps, alpha, layout.nvars);
                    row.push((layout.col(t.comp, &e, d), t.coef.clone()));
                }
                if row.is_empty() {
                    continue;
                }
                row.sort_unstable_by_key(|t| t.0);
                rows.push(row);
            }
        }
    }
    rows
}

fn build_at(gens: &[Prepared], rank: usize, nvars: usize, order: u32) -> Result<(Layout, Echelon)> {
    let layout = Layout::new(nvars, rank, order)?;
    let rows = build_rows(&layout, gens);
    let ech = Echelon::build(layout.ncols(), rows);
    Ok((layout, ech))
}

/// Span of `{x^a * g}` in the `N`-truncation, in reduced echelon form.
pub fn span_build(gens: &[ModuleElement], rank: usize, nvars: usize, order: u32) -> Result<JetSpan> {
    if order < 1 {
        return Err(Error::Range("truncation order must be at least 1".into()));
    }
    check_shapes(gens, rank, nvars)?;
    let (layout, mut ech) = build_at(&prepare(gens), rank, nvars, order)?;
    ech.make_reduced();
    Ok(JetSpan { layout, ech })
}

/// Whether two generator sets span the same submodule modulo `m^N`.
pub fn span_equal(g1: &[ModuleElement], g2: &[ModuleElement], rank: usize, nvars: usize, order: u32) -> Result<bool> {
    let s1 = span_build(g1, rank, nvars, order)?;
    let s2 = span_build(g2, rank, nvars, order)?;
    if s1.dim() != s2.dim() {
        return Ok(false);
    }
    for g in g1 {
        if !s2.contains(&g.jet(order.saturating_sub(1)))? {
            return Ok(false);
        }
    }
    for g in g2 {
        if !s1.contains(&g.jet(order.saturating_sub(1)))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of a colength computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColengthResult {
    pub dim: usize,
    pub cobasis: Vec<(usize, Monomial)>,
    /// Order `N*` at which the certificate succeeded, or the last order tried.
    pub certified_at: u32,
    pub certified: bool,
}

impl ColengthResult {
    /// The dimension if certified.
    pub fn value(&self) -> Option<usize> {
        self.certified.then_some(self.dim)
    }
}

/// Limits for [`colength_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColengthConfig {
    pub max_order: u32,
    /// Give up (uncertified) once the truncated ambient exceeds this many coordinates.
    pub max_columns: usize,
}

pub const DEFAULT_MAX_ORDER: u32 = 64;

impl Default for ColengthConfig {
    fn default() -> Self {
        ColengthConfig { max_order: DEFAULT_MAX_ORDER, max_columns: 60_000 }
    }
}

impl ColengthConfig {
    pub fn with_max_order(max_order: u32) -> Self {
        ColengthConfig { max_order, ..Default::default() }
    }
}

/// Orders tried in sequence: every order up to 12, then steps of about a quarter.
fn next_order(n: u32) -> u32 {
    if n < 12 {
        n + 1
    } else {
        n + (n / 4).max(1)
    }
}

/// Certified colength of the submodule generated by `gens` in `O^rank`.
pub fn colength(gens: &[ModuleElement], rank: usize, nvars: usize, max_order: u32) -> Result<ColengthResult> {
    colength_with(gens, rank, nvars, &ColengthConfig::with_max_order(max_order))
}

pub fn colength_with(gens: &[ModuleElement], rank: usize, nvars: usize, cfg: &ColengthConfig) -> Result<ColengthResult> {
    check_shapes(gens, rank, nvars)?;
    if cfg.max_order < 2 {
        // no order is admissible, so nothing can be certified
        return Ok(ColengthResult { dim: 0, cobasis: Vec::new(), certified_at: cfg.max_order, certified: false });
    }
    if cfg.max_order > MAX_ORDER {
        return Err(Error::Range(alloc::format!("maximal order above {}", MAX_ORDER)));
    }
    let prepared = prepare(gens);
    let mut n = 2u32;
    // every degree below `tested` is known not to be contained
    let mut tested = 0u32;
    let mut last: Option<(Layout, Echelon)> = None;
    loop {
        let layout_cols = Layout::new(nvars, rank, n)?.ncols();
        if layout_cols > cfg.max_columns && last.is_some() {
            break;
        }
        let (layout, ech) = build_at(&prepared, rank, nvars, n)?;
        for d in tested..n {
            if contains_degree(&layout, &ech, d) {
                // m^d lies in the span modulo m^N with d < N, hence in the module
                let cob = cobasis_below(&layout, &ech, d);
                return Ok(ColengthResult { dim: cob.len(), cobasis: cob, certified_at: d + 1, certified: true });
            }
        }
        tested = n;
        last = Some((layout, ech));
        if n >= cfg.max_order {
            break;
        }
        n = next_order(n).min(cfg.max_order);
    }
    let (layout, ech) = last.expect("at least one order computed");
    let cob = cobasis_below(&layout, &ech, layout.order);
    Ok(ColengthResult { dim: cob.len(), cobasis: cob, certified_at: layout.order, certified: false })
}

fn cobasis_below(layout: &Layout, ech: &Echelon, d: u32) -> Vec<(usize, Monomial)> {
    let lim = layout.degree_start[d as usize];
    let nmon = layout.nmon();
    let mut out = Vec::new();
    for comp in 0..layout.rank {
        for i in 0..lim {
            if ech.pivot_row[comp * nmon + i] == NONE {
                out.push((comp, layout.monomial(i)));
            }
        }
    }
    out
}

/// Re-checks a certified result: every monomial element of degree
/// `certified_at - 1` must reduce to zero in the `certified_at`-truncation.
pub fn recheck_certificate(gens: &[ModuleElement], rank: usize, nvars: usize, res: &ColengthResult) -> Result<bool> {
    if !res.certified {
        return Ok(false);
    }
    let span = span_build(gens, rank, nvars, res.certified_at)?;
    Ok(span.contains_degree(res.certified_at - 1))
}
