//! Tjurina transform of maximal-minor determinantal germs, chart by chart.
//!
//! The transform of `X = {rank A < m}` is cut out by `u . A(x) = 0` with
//! `[u]` in projective space. Chart `i` sets `u_i = 1` and uses the other
//! coordinates as parameters, so the exceptional fibre over the origin meets
//! each chart in an affine space and the chart origin is one point of it.

use alloc::string::String;
use alloc::vec::Vec;

use crate::detideal::{det, MultiIndex};
use crate::error::{Error, Result};
use crate::invariants::{ade_recognize, milnor, milnor_icis, tjurina_number, Family, SingularityLabel};
use crate::jetlin::ColengthConfig;
use crate::matrix::{MatrixGerm, MatrixKind};
use crate::ring::{Poly, VariableSet};
use crate::scalar::Rational;
use crate::tangent::{tau_icis, TangentSettings};
use crate::univar;

/// First jet order tried when eliminating.
pub const BOOTSTRAP_ORDER: u32 = 16;

/// Whether the exceptional fibre could carry singular points away from
/// the chart origins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OffOrigin {
    /// Checked: every singular point of the fibre in this chart is the origin.
    Clear,
    Detected,
    /// No exact test available for this shape.
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub var: usize,
    /// Jet of the solution, in the chart variables; never mentions `var`.
    pub solution: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartGerm {
    pub chart: usize,
    pub vars: VariableSet,
    /// Indices of the chart parameters in `vars`.
    pub params: Vec<usize>,
    /// Chart equations before any elimination.
    pub original: Vec<Poly>,
    pub equations: Vec<Poly>,
    pub eliminated: Vec<Elimination>,
    /// Jet order of the last elimination.
    pub order: Option<u32>,
    pub off_origin: OffOrigin,
}

impl ChartGerm {
    pub fn remaining_vars(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|i| !self.eliminated.iter().any(|e| e.var == *i)).collect()
    }

    /// Remaining equations in the remaining variables only.
    pub fn residual(&self) -> Result<(VariableSet, Vec<Poly>)> {
        let keep = self.remaining_vars();
        let names: Vec<&str> = keep.iter().map(|&i| self.vars.name(i)).collect();
        let vs = VariableSet::new(&names)?;
        let mut map = alloc::vec![0usize; self.vars.len()];
        for (k, &i) in keep.iter().enumerate() {
            map[i] = k;
        }
        let eqs = self
            .equations
            .iter()
            .map(|g| {
                debug_assert!(self.eliminated.iter().all(|e| !g.uses_var(e.var)));
                g.remap(&map, keep.len())
            })
            .collect();
        Ok((vs, eqs))
    }

    pub fn is_eliminated(&self, var: usize) -> bool {
        self.eliminated.iter().any(|e| e.var == var)
    }

    /// Substitutes the recorded solutions back into the original equations
    /// and checks that the eliminated ones vanish up to the jet order.
    pub fn check_elimination(&self) -> bool {
        let Some(n) = self.order else { return self.eliminated.is_empty() };
        let mut eqs = self.original.clone();
        for e in &self.eliminated {
            eqs = eqs.iter().map(|g| g.substitute(e.var, &e.solution, Some(n))).collect();
        }
        let mut rest: Vec<Poly> = eqs.into_iter().filter(|g| !g.is_zero()).collect();
        let mut want: Vec<Poly> = self.equations.iter().map(|g| g.jet(n)).collect();
        rest.sort_by(|a, b| a.terms().cmp(b.terms()));
        want.sort_by(|a, b| a.terms().cmp(b.terms()));
        rest == want
    }
}

/// The `m` charts of the transform of an `m x n` matrix (maximal minors only).
pub fn tjurina_charts(a: &MatrixGerm, s: usize) -> Result<Vec<ChartGerm>> {
    let (m, n) = (a.rows(), a.cols());
    if a.kind() != MatrixKind::General {
        return Err(Error::Kind("Tjurina charts need a general matrix".into()));
    }
    if m > n {
        return Err(Error::Shape(alloc::format!("need m <= n, got {m}x{n}")));
    }
    if s != m {
        return Err(Error::Unsupported(alloc::format!("only maximal minors (s = {m}) are supported, got s = {s}")));
    }
    if let Some(&(i, j)) = a.unit_entries().first() {
        return Err(Error::UnitEntry { row: i + 1, col: j + 1 });
    }
    if a.entries().iter().flatten().any(|e| !e.constant_term().is_zero()) {
        return Err(Error::NonzeroConstant);
    }
    let p = a.nvars();
    let (vars, _) = a.vars().extend_fresh("t", m - 1);
    let nv = vars.len();
    let params: Vec<usize> = (p..nv).collect();
    let mut charts = Vec::with_capacity(m);
    for i in 0..m {
        let u: Vec<Poly> = (0..m)
            .map(|j| match j.cmp(&i) {
                core::cmp::Ordering::Equal => Poly::one(nv),
                core::cmp::Ordering::Less => Poly::var(nv, p + j),
                core::cmp::Ordering::Greater => Poly::var(nv, p + j - 1),
            })
            .collect();
        let original: Vec<Poly> = (0..n)
            .map(|k| {
                let mut g = Poly::zero(nv);
                for (j, uj) in u.iter().enumerate() {
                    g = g.add(&uj.mul(&a.entry(j, k).extend_vars(m - 1)));
                }
                g
            })
            .collect();
        charts.push(ChartGerm {
            chart: i,
            vars: vars.clone(),
            params: params.clone(),
            equations: original.clone(),
            original,
            eliminated: Vec::new(),
            order: None,
            off_origin: off_origin(a, i),
        });
    }
    Ok(charts)
}

/// Exact test for `m = 2`: along the fibre the chart Jacobian is
/// `L_i + t L_j` with `L_r` the linear parts of row `r`; its maximal minors
/// have a common root away from `t = 0` exactly when a singular point sits
/// there.
fn off_origin(a: &MatrixGerm, i: usize) -> OffOrigin {
    let (m, n, p) = (a.rows(), a.cols(), a.nvars());
    if m == 1 {
        return OffOrigin::Clear;
    }
    if m != 2 || n > p {
        return OffOrigin::Unchecked;
    }
    let lin = |r: usize, k: usize| a.entry(r, k).linear_part();
    let t = Poly::var(1, 0);
    let jac: Vec<Vec<Poly>> = (0..n)
        .map(|k| {
            let (li, lj) = (lin(i, k), lin(1 - i, k));
            (0..p).map(|l| Poly::constant(1, li[l].clone()).add(&t.scale(&lj[l]))).collect()
        })
        .collect();
    let mut g: Vec<Rational> = Vec::new();
    for cols in MultiIndex::all(p, n) {
        let sub: Vec<Vec<Poly>> = jac.iter().map(|row| cols.0.iter().map(|&c| row[c].clone()).collect()).collect();
        g = univar::gcd(&g, &univar::from_poly(&det(&sub, 1)));
    }
    if g.is_empty() {
        return OffOrigin::Detected;
    }
    let low = g.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if g.len() - 1 > low {
        OffOrigin::Detected
    } else {
        OffOrigin::Clear
    }
}

/// Removes equations with a unit linear coefficient by solving them for
/// that variable as a jet of order `order`.
pub fn eliminate_units(c: &ChartGerm, order: u32) -> Result<ChartGerm> {
    let mut out = c.clone();
    out.order = Some(order);
    let nv = c.vars.len();
    loop {
        let mut hit = None;
        'scan: for (gi, g) in out.equations.iter().enumerate() {
            if !g.constant_term().is_zero() {
                continue;
            }
            let lin = g.linear_part();
            for (y, cy) in lin.iter().enumerate() {
                if !cy.is_zero() && !out.is_eliminated(y) {
                    hit = Some((gi, y, cy.clone()));
                    break 'scan;
                }
            }
        }
        let Some((gi, y, cy)) = hit else { break };
        let g = out.equations.remove(gi);
        let h = g.sub(&Poly::var(nv, y).scale(&cy));
        let factor = -&cy.recip();
        let mut phi = Poly::zero(nv);
        let mut stable = false;
        for _ in 0..=order + 1 {
            let next = h.substitute(y, &phi, Some(order)).scale(&factor);
            if next == phi {
                stable = true;
                break;
            }
            phi = next;
        }
        if !stable {
            let name = c.vars.name(y);
            return Err(Error::Elimination(alloc::format!("solving for {name} did not stabilize at order {order}")));
        }
        out.equations = out
            .equations
            .iter()
            .map(|e| e.substitute(y, &phi, Some(order)))
            .filter(|e| !e.is_zero())
            .collect();
        out.eliminated.push(Elimination { var: y, solution: phi });
    }
    if !out.check_elimination() {
        return Err(Error::Elimination("substituting the solutions back left a nonzero jet".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartInvariants {
    pub smooth: bool,
    pub mu: usize,
    pub tau: usize,
    /// Absent when more than one equation remains.
    pub label: Option<SingularityLabel>,
    pub certified: bool,
    /// Order at which the Milnor number certified (0 for smooth charts).
    pub certified_at: u32,
}

pub fn chart_invariants(c: &ChartGerm, cfg: &ColengthConfig) -> Result<ChartInvariants> {
    let (_, eqs) = c.residual()?;
    match eqs.len() {
        0 => Ok(ChartInvariants {
            smooth: true,
            mu: 0,
            tau: 0,
            label: Some(SingularityLabel::plain(Family::Smooth)),
            certified: true,
            certified_at: 0,
        }),
        1 => {
            let f = &eqs[0];
            let mu = milnor(f, cfg)?;
            let smooth = mu.certified && mu.dim == 0;
            if !mu.certified {
                return Ok(ChartInvariants {
                    smooth: false,
                    mu: mu.dim,
                    tau: 0,
                    label: Some(SingularityLabel::plain(Family::NotIsolated)),
                    certified: false,
                    certified_at: mu.certified_at,
                });
            }
            let tau = tjurina_number(f, cfg)?;
            let label = ade_recognize(f, cfg)?;
            Ok(ChartInvariants {
                smooth,
                mu: mu.dim,
                tau: tau.dim,
                label: Some(label),
                certified: tau.certified,
                certified_at: mu.certified_at,
            })
        }
        _ => {
            let (vs, _) = c.residual()?;
            let mu = milnor_icis(&eqs, cfg)?;
            let row = MatrixGerm::new(vs, MatrixKind::General, alloc::vec![eqs.clone()])?;
            let settings = TangentSettings { colength: *cfg, strict_units: false };
            let tau = tau_icis(&row, &settings)?;
            Ok(ChartInvariants {
                smooth: mu == 0,
                mu,
                tau: tau.dim,
                label: None,
                certified: tau.certified,
                certified_at: tau.certified_at,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartReport {
    pub chart: ChartGerm,
    pub invariants: ChartInvariants,
}

impl ChartReport {
    pub fn summary(&self) -> String {
        match &self.invariants.label {
            Some(l) => alloc::format!("{l}"),
            None => alloc::format!("ICIS mu={}", self.invariants.mu),
        }
    }
}

/// Eliminates at the bootstrap order, then again at `certified order + 2`
/// if the first pass was too short to determine the residual.
pub fn analyze_chart(c: &ChartGerm, cfg: &ColengthConfig) -> Result<ChartReport> {
    let mut order = BOOTSTRAP_ORDER;
    let mut tried_max = false;
    loop {
        let chart = eliminate_units(c, order)?;
        let inv = chart_invariants(&chart, cfg)?;
        if inv.certified && inv.certified_at + 2 <= order {
            return Ok(ChartReport { chart, invariants: inv });
        }
        let next = if inv.certified { inv.certified_at + 2 } else { cfg.max_order + 2 };
        if next <= order || tried_max {
            return Ok(ChartReport { chart, invariants: inv });
        }
        tried_max = !inv.certified;
        order = next;
    }
}

pub fn analyze_transform(a: &MatrixGerm, cfg: &ColengthConfig) -> Result<Vec<ChartReport>> {
    tjurina_charts(a, a.rows())?.iter().map(|c| analyze_chart(c, cfg)).collect()
}

/// Betti numbers of the Milnor fibre of an isolated 3-fold given by a
/// `2 x 3` matrix in five variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreefoldBetti {
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
    pub b3: usize,
    pub charts: Vec<ChartReport>,
}

pub fn b3_threefold(a: &MatrixGerm, cfg: &ColengthConfig) -> Result<ThreefoldBetti> {
    if a.kind() != MatrixKind::General || a.rows() != 2 || a.cols() != 3 || a.nvars() != 5 {
        return Err(Error::Shape("b3 needs a general 2x3 matrix in five variables".into()));
    }
    let charts = analyze_transform(a, cfg)?;
    let mut b3 = 0;
    for r in &charts {
        if r.chart.off_origin != OffOrigin::Clear {
            return Err(Error::Unsupported(alloc::format!(
                "chart {} may have singular points away from its origin",
                r.chart.chart + 1
            )));
        }
        if !r.invariants.certified {
            return Err(Error::Uncertified {
                what: alloc::format!("Milnor number in chart {}", r.chart.chart + 1),
                order: r.invariants.certified_at,
            });
        }
        b3 += r.invariants.mu;
    }
    Ok(ThreefoldBetti { b0: 1, b1: 0, b2: 1, b3, charts })
}


#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::ring::parse_poly;

    fn mat(vars: &str, rows: &[&[&str]]) -> MatrixGerm {
        MatrixGerm::parse(&VariableSet::parse(vars).unwrap(), MatrixKind::General, rows).unwrap()
    }

    #[test]
    fn chart_equations() {
        let a = mat("x, y, z, w", &[&["x", "y", "z"], &["y^2", "z", "w"]]);
        let charts = tjurina_charts(&a, 2).unwrap();
        assert_eq!(charts.len(), 2);
        let vs = &charts[0].vars;
        let want: Vec<Poly> = ["x + t*y^2", "y + t*z", "z + t*w"].iter().map(|s| parse_poly(s, vs).unwrap()).collect();
        assert_eq!(charts[0].equations, want);
        // first chart is smooth, the second carries the A_1 point
        let r0 = analyze_chart(&charts[0], &ColengthConfig::default()).unwrap();
        assert!(r0.invariants.smooth);
        let r1 = analyze_chart(&charts[1], &ColengthConfig::default()).unwrap();
        assert_eq!(r1.invariants.label.unwrap().to_string(), "A_1");
        let (rv, eqs) = r1.chart.residual().unwrap();
        assert_eq!(eqs, [parse_poly("t*x + y^2", &rv).unwrap()]);
        assert!(tjurina_charts(&a, 1).is_err());
    }

    #[test]
    fn row_matrix_has_one_chart() {
        let a = mat("x, y", &[&["x^2", "y^3"]]);
        let c = tjurina_charts(&a, 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].equations, a.entries()[0]);
    }

    #[test]
    fn bare_variable_is_eliminated_to_zero() {
        let a = mat("x, y", &[&["y"]]);
        let c = eliminate_units(&tjurina_charts(&a, 1).unwrap()[0], 8).unwrap();
        assert!(c.equations.is_empty());
        assert_eq!(c.eliminated, [Elimination { var: 1, solution: Poly::zero(2) }]);
    }

    #[test]
    fn threefold_b3() {
        let cfg = ColengthConfig::default();
        for (last, want) in [("x^4 + y^2", 3), ("x", 0), ("x^3 + y^4", 6)] {
            let a = mat("x, y, z, v, w", &[&["x", "y", "z"], &["v", "w", last]]);
            let b = b3_threefold(&a, &cfg).unwrap();
            assert_eq!(b.b3, want, "{last}");
            assert!(b.charts.iter().all(|r| r.chart.check_elimination()));
        }
        let a = mat("x, y, z, v, w", &[&["x", "y", "z"], &["v", "w", "x^3 + y^2"]]);
        let b = b3_threefold(&a, &cfg).unwrap();
        let (rv, eqs) = b.charts[1].chart.residual().unwrap();
        assert_eq!(eqs, [parse_poly("t*z + x^3 + y^2", &rv).unwrap()]);
        assert_eq!(b.charts[1].invariants.label.unwrap().to_string(), "A_2");
        assert_eq!(b.charts[1].invariants.mu, 2);
    }
}
