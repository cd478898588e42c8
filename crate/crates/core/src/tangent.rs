//! Extended tangent spaces, Tjurina numbers of matrices, determinacy and unfoldings.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::jetlin::{colength_with, ColengthConfig, ColengthResult, ModuleElement};
use crate::linalg::Dense;
use crate::matrix::{mat_mul, pack_entries, MatrixGerm, MatrixKind};
use crate::ring::{Monomial, Poly};
use crate::scalar::Rational;

/// Group acting on matrix germs.
///
/// `Sym` and `SkGl` use all of `gl_m` acting by `M A + A M^T`; `SymSl` and
/// `Sk` restrict `M` to trace-free matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquivalenceGroup {
    Gl,
    Sl,
    Sym,
    SymSl,
    Sk,
    SkGl,
}

impl EquivalenceGroup {
    pub fn name(self) -> &'static str {
        match self {
            EquivalenceGroup::Gl => "gl",
            EquivalenceGroup::Sl => "sl",
            EquivalenceGroup::Sym => "sym",
            EquivalenceGroup::SymSl => "sym-sl",
            EquivalenceGroup::Sk => "sk",
            EquivalenceGroup::SkGl => "sk-gl",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "gl" => EquivalenceGroup::Gl,
            "sl" => EquivalenceGroup::Sl,
            "sym" => EquivalenceGroup::Sym,
            "sym-sl" => EquivalenceGroup::SymSl,
            "sk" => EquivalenceGroup::Sk,
            "sk-gl" => EquivalenceGroup::SkGl,
            _ => return None,
        })
    }

    /// Matrix kind this group acts on.
    pub fn kind(self) -> MatrixKind {
        match self {
            EquivalenceGroup::Gl | EquivalenceGroup::Sl => MatrixKind::General,
            EquivalenceGroup::Sym | EquivalenceGroup::SymSl => MatrixKind::Symmetric,
            EquivalenceGroup::Sk | EquivalenceGroup::SkGl => MatrixKind::Skew,
        }
    }

    fn trace_free(self) -> bool {
        matches!(self, EquivalenceGroup::Sl | EquivalenceGroup::SymSl | EquivalenceGroup::Sk)
    }

    /// The trace-free counterpart.
    pub fn special(self) -> Self {
        match self {
            EquivalenceGroup::Gl | EquivalenceGroup::Sl => EquivalenceGroup::Sl,
            EquivalenceGroup::Sym | EquivalenceGroup::SymSl => EquivalenceGroup::SymSl,
            EquivalenceGroup::Sk | EquivalenceGroup::SkGl => EquivalenceGroup::Sk,
        }
    }

    /// The full `gl` counterpart.
    pub fn general(self) -> Self {
        match self {
            EquivalenceGroup::Gl | EquivalenceGroup::Sl => EquivalenceGroup::Gl,
            EquivalenceGroup::Sym | EquivalenceGroup::SymSl => EquivalenceGroup::Sym,
            EquivalenceGroup::Sk | EquivalenceGroup::SkGl => EquivalenceGroup::SkGl,
        }
    }
}

impl fmt::Display for EquivalenceGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Settings shared by the matrix computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TangentSettings {
    pub colength: ColengthConfig,
    /// Refuse matrices with unit entries instead of reducing them.
    pub strict_units: bool,
}

impl TangentSettings {
    pub fn with_max_order(max_order: u32) -> Self {
        TangentSettings { colength: ColengthConfig::with_max_order(max_order), strict_units: false }
    }
}

fn check_group(a: &MatrixGerm, g: EquivalenceGroup) -> Result<()> {
    if a.kind() != g.kind() {
        return Err(Error::Kind(alloc::format!("group {} acts on {} matrices, got {}", g, g.kind(), a.kind())));
    }
    Ok(())
}

/// Basis of `gl_k` or `sl_k` as constant matrices.
fn lie_basis(k: usize, trace_free: bool) -> Vec<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    let zero = || vec![vec![Rational::zero(); k]; k];
    for a in 0..k {
        for b in 0..k {
            if trace_free && a == b {
                continue;
            }
            let mut e = zero();
            e[a][b] = Rational::one();
            out.push(e);
        }
    }
    if trace_free {
        for a in 0..k.saturating_sub(1) {
            let mut e = zero();
            e[a][a] = Rational::one();
            e[a + 1][a + 1] = Rational::from_int(-1);
            out.push(e);
        }
    }
    out
}

fn const_mat(c: &[Vec<Rational>], nvars: usize) -> Vec<Vec<Poly>> {
    c.iter().map(|r| r.iter().map(|x| Poly::constant(nvars, x.clone())).collect()).collect()
}

fn transpose(e: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let m = e.len();
    let n = e[0].len();
    (0..n).map(|j| (0..m).map(|i| e[i][j].clone()).collect()).collect()
}

/// Generators of the extended tangent space, split into the partial
/// derivatives and the group products.
pub fn tangent_parts(a: &MatrixGerm, g: EquivalenceGroup) -> Result<(Vec<ModuleElement>, Vec<ModuleElement>)> {
    check_group(a, g)?;
    let nv = a.nvars();
    let kind = a.kind();
    let e = a.entries();
    let partials: Vec<ModuleElement> =
        (0..nv).map(|i| pack_entries(kind, a.map(|p| p.partial(i)).entries())).collect();
    let mut products = Vec::new();
    let tf = g.trace_free();
    match kind {
        MatrixKind::General => {
            for l in lie_basis(a.rows(), tf) {
                products.push(pack_entries(kind, &mat_mul(&const_mat(&l, nv), e, nv, None)));
            }
            for r in lie_basis(a.cols(), tf) {
                products.push(pack_entries(kind, &mat_mul(e, &const_mat(&r, nv), nv, None)));
            }
        }
        MatrixKind::Symmetric | MatrixKind::Skew => {
            for l in lie_basis(a.rows(), tf) {
                let lm = const_mat(&l, nv);
                let left = mat_mul(&lm, e, nv, None);
                let right = mat_mul(e, &transpose(&lm), nv, None);
                let sum: Vec<Vec<Poly>> =
                    left.iter().zip(&right).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p.add(q)).collect()).collect();
                products.push(pack_entries(kind, &sum));
            }
        }
    }
    Ok((partials, products))
}

/// All generators of the extended tangent space in packed coordinates.
pub fn tangent_generators(a: &MatrixGerm, g: EquivalenceGroup) -> Result<Vec<ModuleElement>> {
    let (mut p, q) = tangent_parts(a, g)?;
    p.extend(q);
    Ok(p)
}

/// Result of preparing a matrix for a tangent computation.
#[derive(Clone, Debug)]
pub struct Prepared {
    /// The matrix actually used, `None` when unit reduction removed everything.
    pub matrix: Option<MatrixGerm>,
    pub unit_steps: usize,
}

/// Applies the unit-entry policy of `settings`.
pub fn prepare_units(a: &MatrixGerm, settings: &TangentSettings) -> Result<Prepared> {
    let units = a.unit_entries();
    if units.is_empty() {
        return Ok(Prepared { matrix: Some(a.clone()), unit_steps: 0 });
    }
    if settings.strict_units {
        let (row, col) = units[0];
        return Err(Error::UnitEntry { row: row + 1, col: col + 1 });
    }
    let (matrix, unit_steps) = a.reduce_units(settings.colength.max_order + 2)?;
    Ok(Prepared { matrix, unit_steps })
}

fn trivial() -> ColengthResult {
    ColengthResult { dim: 0, cobasis: Vec::new(), certified_at: 1, certified: true }
}

/// Certified colength of the extended tangent space.
pub fn tau(a: &MatrixGerm, g: EquivalenceGroup, settings: &TangentSettings) -> Result<ColengthResult> {
    check_group(a, g)?;
    let prep = prepare_units(a, settings)?;
    match prep.matrix {
        None => Ok(trivial()),
        Some(b) => tau_exact(&b, g, &settings.colength),
    }
}

/// Tangent colength without any unit handling.
pub fn tau_exact(a: &MatrixGerm, g: EquivalenceGroup, cfg: &ColengthConfig) -> Result<ColengthResult> {
    let gens = tangent_generators(a, g)?;
    colength_with(&gens, a.packed_dim(), a.nvars(), cfg)
}

/// Tjurina number of a complete intersection given as a row, or of a
/// codimension-two germ given by its `m x (m+1)` presentation matrix.
pub fn tau_icis(a: &MatrixGerm, settings: &TangentSettings) -> Result<ColengthResult> {
    if a.kind() != MatrixKind::General || !(a.rows() == 1 || a.cols() == a.rows() + 1) {
        return Err(Error::Shape(alloc::format!(
            "expected a row of equations or an m x (m+1) matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    tau(a, EquivalenceGroup::Gl, settings)
}

/// Smallest `k` with `m^(k+1)` inside `m^2 <partials> + m <group products>`.
pub fn determinacy_bound(a: &MatrixGerm, g: EquivalenceGroup, settings: &TangentSettings) -> Result<u32> {
    check_group(a, g)?;
    let prep = prepare_units(a, settings)?;
    let Some(b) = prep.matrix else { return Ok(0) };
    let (partials, products) = tangent_parts(&b, g)?;
    let nv = b.nvars();
    let mut gens = Vec::new();
    for p in &partials {
        for m in Monomial::of_degree(nv, 2) {
            gens.push(p.mul_monomial(&m));
        }
    }
    for q in &products {
        for m in Monomial::of_degree(nv, 1) {
            gens.push(q.mul_monomial(&m));
        }
    }
    let res = colength_with(&gens, b.packed_dim(), nv, &settings.colength)?;
    if !res.certified {
        return Err(Error::Uncertified { what: "determinacy inclusion".into(), order: res.certified_at });
    }
    // m^(N*-1) is the first power contained, so k + 1 = N* - 1
    Ok(res.certified_at.saturating_sub(2).max(1))
}

/// Monomial representatives of a complement of the tangent space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoldingBasis {
    pub basis: Vec<MatrixGerm>,
    pub tau: usize,
    pub certified_at: u32,
}

impl UnfoldingBasis {
    /// Labels such as `x^2 E(1,2)` for display.
    pub fn labels(&self) -> Vec<String> {
        self.basis
            .iter()
            .map(|b| {
                let mut out = String::new();
                for (i, r) in b.entries().iter().enumerate() {
                    for (j, p) in r.iter().enumerate() {
                        let keep = match b.kind() {
                            MatrixKind::General => true,
                            MatrixKind::Symmetric => i <= j,
                            MatrixKind::Skew => i < j,
                        };
                        if keep && !p.is_zero() {
                            out = alloc::format!("{} E({},{})", p.display(b.vars()), i + 1, j + 1);
                        }
                    }
                }
                out
            })
            .collect()
    }
}

/// The cobasis of the tangent space as unit matrices.
pub fn miniversal_unfolding(a: &MatrixGerm, g: EquivalenceGroup, settings: &TangentSettings) -> Result<UnfoldingBasis> {
    check_group(a, g)?;
    let prep = prepare_units(a, settings)?;
    let Some(b) = prep.matrix else {
        return Ok(UnfoldingBasis { basis: Vec::new(), tau: 0, certified_at: 1 });
    };
    let res = tau_exact(&b, g, &settings.colength)?;
    if !res.certified {
        return Err(Error::Uncertified { what: "tangent colength".into(), order: res.certified_at });
    }
    let pos = b.packed_positions();
    let nv = b.nvars();
    let mut basis = Vec::new();
    for (comp, m) in &res.cobasis {
        let (i, j) = pos[*comp];
        let mut e = vec![vec![Poly::zero(nv); b.cols()]; b.rows()];
        let t = Poly::term(m.clone(), Rational::one());
        match b.kind() {
            MatrixKind::General => e[i][j] = t,
            MatrixKind::Symmetric => {
                e[j][i] = t.clone();
                e[i][j] = t;
            }
            MatrixKind::Skew => {
                e[j][i] = t.neg();
                e[i][j] = t;
            }
        }
        basis.push(MatrixGerm::new(b.vars().clone(), b.kind(), e)?);
    }
    Ok(UnfoldingBasis { tau: basis.len(), basis, certified_at: res.certified_at })
}

/// Packed dimension minus the rank of the linear parts of the entries.
pub fn corank_differential(a: &MatrixGerm) -> usize {
    let rows: Vec<Vec<Rational>> = a.pack().comps.iter().map(Poly::linear_part).collect();
    let d = Dense::from_rows(rows, a.nvars());
    a.packed_dim() - d.rank()
}
