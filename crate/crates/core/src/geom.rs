//! Closed formulas for generic determinantal varieties and the assembly of
//! Euler characteristics of essential smoothings from user-supplied data.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::matrix::MatrixKind;
use crate::scalar::binomial;

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericProfile {
    pub expected_codim: usize,
    pub ambient_dim: usize,
    pub variety_dim: i64,
    pub isolated: bool,
    pub smoothable: bool,
    /// Reduced Euler characteristic of the complex link (general kind).
    pub link_reduced_euler: Option<i64>,
    /// Local Euler obstruction at the origin (general kind).
    pub euler_obstruction: Option<i64>,
}

/// Codimensions of `{rank < s}` and of its singular locus `{rank < s - 1}`
/// (for skew matrices `s` counts Pfaffian half-sizes).
fn codims(kind: MatrixKind, m: usize, n: usize, s: usize) -> Result<(usize, usize)> {
    let bad = || Error::Range(alloc::format!("invalid sizes for {kind}: {m}x{n}, s = {s}"));
    let tri = |k: usize| k * (k + 1) / 2;
    match kind {
        MatrixKind::General => {
            if s == 0 || s > m.min(n) {
                return Err(bad());
            }
            Ok(((m - s + 1) * (n - s + 1), (m - s + 2) * (n - s + 2)))
        }
        MatrixKind::Symmetric => {
            if m != n || s == 0 || s > m {
                return Err(bad());
            }
            Ok((tri(m - s + 1), tri(m - s + 2)))
        }
        MatrixKind::Skew => {
            if m != n || s == 0 || 2 * s > m {
                return Err(bad());
            }
            Ok((tri(m - 2 * s + 1), tri(m - 2 * s + 3)))
        }
    }
}

pub fn generic_profile(kind: MatrixKind, m: usize, n: usize, s: usize, p: usize) -> Result<GenericProfile> {
    let (m, n) = if kind == MatrixKind::General && m > n { (n, m) } else { (m, n) };
    let (c, sing) = codims(kind, m, n, s)?;
    let general = kind == MatrixKind::General;
    let (mi, si) = (m as i64, s as i64);
    Ok(GenericProfile {
        expected_codim: c,
        ambient_dim: p,
        variety_dim: p as i64 - c as i64,
        isolated: p <= sing,
        smoothable: p < sing,
        link_reduced_euler: general.then(|| sign(si) * binomial(mi - 1, si - 1)),
        euler_obstruction: general.then(|| binomial(mi, si - 1)),
    })
}

/// One wedge summand up to homotopy.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Summand {
    Sphere(u32),
    /// A finite set of points.
    Points(u32),
    Contractible,
    /// `S^suspension(L^{s,p}_{m,n})`, not resolved further.
    LinkBlock { m: usize, n: usize, s: usize, p: usize, suspension: u32 },
}

impl Summand {
    pub fn reduced_euler(&self) -> Option<i64> {
        match *self {
            Summand::Sphere(d) => Some(sign(d as i64)),
            Summand::Points(c) => Some(c as i64 - 1),
            Summand::Contractible => Some(0),
            Summand::LinkBlock { m, n, s, p, suspension } => {
                // known in general only for the complex link itself
                (p + 1 == m * n).then(|| sign(suspension as i64) * complex_link_euler(m, s))
            }
        }
    }

    fn suspend(self, k: u32) -> Vec<(Summand, u32)> {
        if k == 0 {
            return alloc::vec![(self, 1)];
        }
        match self {
            Summand::Sphere(d) => alloc::vec![(Summand::Sphere(d + k), 1)],
            Summand::Points(0) => alloc::vec![(Summand::Sphere(k - 1), 1)],
            Summand::Points(1) | Summand::Contractible => alloc::vec![(Summand::Contractible, 1)],
            Summand::Points(c) => alloc::vec![(Summand::Sphere(k), c - 1)],
            Summand::LinkBlock { m, n, s, p, suspension } => {
                alloc::vec![(Summand::LinkBlock { m, n, s, p, suspension: suspension + k }, 1)]
            }
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Sphere(d) => write!(f, "S^{d}"),
            Summand::Points(1) => f.write_str("pt"),
            Summand::Points(c) => write!(f, "{c} points"),
            Summand::Contractible => f.write_str("contractible"),
            Summand::LinkBlock { m, n, s, p, suspension: 0 } => write!(f, "L^({s},{p})_({m},{n})"),
            Summand::LinkBlock { m, n, s, p, suspension } => write!(f, "S^{suspension}(L^({s},{p})_({m},{n}))"),
        }
    }
}

/// A wedge of summands with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomotopyDescriptor {
    pub summands: Vec<(Summand, u32)>,
}

impl HomotopyDescriptor {
    fn push(&mut self, s: Summand, mult: u32) {
        if mult == 0 {
            return;
        }
        if let Some(e) = self.summands.iter_mut().find(|(t, _)| *t == s) {
            e.1 += mult;
        } else {
            self.summands.push((s, mult));
        }
    }

    /// Reduced Euler characteristic, if every summand is resolved.
    pub fn reduced_euler(&self) -> Option<i64> {
        self.summands.iter().map(|(s, k)| s.reduced_euler().map(|e| e * *k as i64)).sum()
    }

    pub fn is_resolved(&self) -> bool {
        self.summands.iter().all(|(s, _)| !matches!(s, Summand::LinkBlock { .. }))
    }
}

impl fmt::Display for HomotopyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("empty");
        }
        // short wedges are spelled out, long ones abbreviated as `k x S^d`
        let mut parts: Vec<String> = Vec::new();
        for (s, k) in &self.summands {
            if *k <= 8 {
                parts.extend((0..*k).map(|_| alloc::format!("{s}")));
            } else {
                parts.push(alloc::format!("{k} x {s}"));
            }
        }
        f.write_str(&parts.join(" v "))
    }
}

/// Homotopy type of `L^{2,p}_{2,n}`.
pub fn link_homotopy_2xn(n: usize, p: usize) -> Result<HomotopyDescriptor> {
    if n < 2 || p == 0 {
        return Err(Error::Range(alloc::format!("need n >= 2 and p >= 1, got n = {n}, p = {p}")));
    }
    let mut d = HomotopyDescriptor::default();
    if p >= 2 * n {
        d.push(Summand::Points(1), 1);
    } else if p > n {
        d.push(Summand::Sphere(2), 1);
    } else if p == n {
        d.push(Summand::Sphere(1), (n - 1) as u32);
    } else if p + 1 == n {
        d.push(Summand::Points(n as u32), 1);
    } else {
        return Err(Error::Range(alloc::format!("no homotopy type known for p = {p} < n - 1 = {}", n - 1)));
    }
    Ok(d)
}

/// Reduced Euler characteristic of the complex link of `{rank < s}` in
/// `m x n` matrices (`m <= n`); for `s <= 1` the link is empty.
pub fn complex_link_euler(m: usize, s: usize) -> i64 {
    if s == 0 {
        return -1;
    }
    sign(s as i64) * binomial(m as i64 - 1, s as i64 - 1)
}

/// `L^{s,p}_{m,n}` resolved where possible.
fn link_block(m: usize, n: usize, s: usize, p: usize) -> Vec<(Summand, u32)> {
    if s <= 1 {
        // {rank < 1} is the origin, {rank < 0} is empty; a plane off the origin misses both
        return alloc::vec![(Summand::Points(0), 1)];
    }
    if m == 2 && s == 2 {
        if let Ok(d) = link_homotopy_2xn(n, p) {
            return d.summands;
        }
    }
    alloc::vec![(Summand::LinkBlock { m, n, s, p, suspension: 0 }, 1)]
}

/// The wedge decomposition of an essential smoothing, given `lambda(r)`.
pub fn bouquet_descriptor(m: usize, n: usize, s: usize, p: usize, lambdas: &BTreeMap<usize, u32>) -> HomotopyDescriptor {
    let (m, n) = if m > n { (n, m) } else { (m, n) };
    let mut d = HomotopyDescriptor::default();
    for (sm, k) in link_block(m, n, s, p) {
        if sm != Summand::Points(0) {
            d.push(sm, k);
        }
    }
    for r in 0..s {
        let lam = lambdas.get(&r).copied().unwrap_or(0);
        let susp = p as i64 - ((m - r) * (n - r)) as i64 + 1;
        if lam == 0 || susp < 0 {
            continue;
        }
        for (base, k0) in link_block(m - r, n - r, s - r - 1, (m - r) * (n - r) - 1) {
            if base == Summand::Points(0) && susp == 0 {
                continue;
            }
            for (sm, k1) in base.suspend(susp as u32) {
                d.push(sm, lam * k0 * k1);
            }
        }
    }
    d
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EulerInputs {
    /// `lambda(r)` for `0 <= r < s` and the reduced Euler characteristic of `L^{s,p}_{m,n}`.
    Bouquet { lambdas: BTreeMap<usize, i64>, link_euler: i64 },
    /// Polar multiplicities `m_i(X^{r+1})` keyed by `(r, i)`.
    Polar { multiplicities: BTreeMap<(usize, usize), i64> },
}

/// Bouquet mode returns the reduced Euler characteristic, polar mode the
/// unreduced one.
pub fn euler_characteristic(m: usize, n: usize, s: usize, p: usize, inputs: &EulerInputs) -> Result<i64> {
    let (m, n) = if m > n { (n, m) } else { (m, n) };
    if s == 0 || s > m {
        return Err(Error::Range(alloc::format!("s = {s} outside 1..={m}")));
    }
    let (mi, ni, si, pi) = (m as i64, n as i64, s as i64, p as i64);
    match inputs {
        EulerInputs::Bouquet { lambdas, link_euler } => {
            let mut acc = *link_euler;
            for r in 0..s {
                let lam = *lambdas.get(&r).ok_or_else(|| Error::MissingInput(alloc::format!("lambda({r})")))?;
                let ri = r as i64;
                let ambient = (mi - ri) * (ni - ri);
                // the complex link of {rank < s-r-1}, empty when r = s-1
                let coeff = sign(si - ri - 1) * complex_link_euler(m - r, s - r - 1);
                acc += sign(pi + si - ri - ambient) * coeff * lam;
            }
            Ok(acc)
        }
        EulerInputs::Polar { multiplicities } => {
            let mut acc = 0;
            for r in 0..s {
                let ri = r as i64;
                let d = pi - (mi - ri) * (ni - ri);
                if d < 0 {
                    continue;
                }
                let mut inner = 0;
                for j in 0..=d {
                    let i = (d - j) as usize;
                    let mult = *multiplicities
                        .get(&(r, i))
                        .ok_or_else(|| Error::MissingInput(alloc::format!("m_{i} for r = {r}")))?;
                    inner += sign(d - j) * mult;
                }
                acc += inner * sign(si - ri - 1) * binomial(mi - ri, si - ri - 1);
            }
            Ok(acc)
        }
    }
}

/// Stable homotopy groups of the limiting symmetric spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableGroup {
    Zero,
    Z,
    Z2,
}

impl fmt::Display for StableGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StableGroup::Zero => "0",
            StableGroup::Z => "Z",
            StableGroup::Z2 => "Z_2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberTopology {
    pub kind: MatrixKind,
    pub m: usize,
    /// Degrees of the exterior generators of the rational cohomology.
    pub generators: Vec<u32>,
    /// Extra free module generator (`{1, e_m}` for even symmetric matrices).
    pub module_generator: Option<u32>,
    /// Degrees of the mod 2 exterior generators (symmetric case).
    pub mod2_generators: Vec<u32>,
    /// Homotopy groups agree with the stable ones for `j < stable_bound`.
    pub stable_bound: u32,
    /// Complex link of the generic hypersurface is `S^(N-2)`.
    pub ambient_dim: usize,
    pub link_sphere: usize,
}

impl FiberTopology {
    /// `pi_j` of the Milnor fibre inside the stable range.
    pub fn homotopy_group(&self, j: u32) -> Option<StableGroup> {
        (j < self.stable_bound).then(|| stable_group(self.kind, j))
    }
}

/// `pi_j` of SU, SU/SO or SU/Sp, periodic with period 8 from `j = 2`.
pub fn stable_group(kind: MatrixKind, j: u32) -> StableGroup {
    use StableGroup::*;
    const SQ: [StableGroup; 10] = [Zero, Zero, Zero, Z, Zero, Z, Zero, Z, Zero, Z];
    const SYM: [StableGroup; 10] = [Zero, Zero, Z2, Z2, Zero, Z, Zero, Zero, Zero, Z];
    const SK: [StableGroup; 10] = [Zero, Zero, Zero, Zero, Zero, Z, Z2, Z2, Zero, Z];
    let row = match kind {
        MatrixKind::General => &SQ,
        MatrixKind::Symmetric => &SYM,
        MatrixKind::Skew => &SK,
    };
    let idx = if j < 2 { j } else { 2 + (j - 2) % 8 };
    row[idx as usize]
}

pub fn milnor_fiber_topology(kind: MatrixKind, m: usize) -> Result<FiberTopology> {
    if m < 2 || (kind == MatrixKind::Skew && m % 2 == 1) {
        return Err(Error::Range(alloc::format!("no generic {kind} determinantal hypersurface of size {m}")));
    }
    let mu = m as u32;
    let step = |from: u32, to: u32, by: usize| -> Vec<u32> { (from..=to).step_by(by).collect() };
    let (generators, module_generator, mod2, bound, ambient) = match kind {
        MatrixKind::General => (step(3, 2 * mu - 1, 2), None, Vec::new(), 2 * mu, m * m),
        MatrixKind::Symmetric if m % 2 == 1 => (step(5, 2 * mu - 1, 4), None, step(2, mu, 1), mu - 1, m * (m + 1) / 2),
        MatrixKind::Symmetric => (step(5, 2 * mu - 3, 4), Some(mu), step(2, mu, 1), mu - 1, m * (m + 1) / 2),
        MatrixKind::Skew => (step(5, 2 * mu - 3, 4), None, Vec::new(), 2 * mu - 2, m * (m - 1) / 2),
    };
    Ok(FiberTopology {
        kind,
        m,
        generators,
        module_generator,
        mod2_generators: mod2,
        stable_bound: bound,
        ambient_dim: ambient,
        link_sphere: ambient - 2,
    })
}
