//! Parametrized classification rows and the checks that recompute them.
//!
//! A [`TableRow`] carries a matrix template whose entries may mention integer
//! parameters (`x^(k+1) + y^l`), the admissible parameter ranges, the expected
//! value of each column as an expression in the parameters, and the check
//! kind used to recompute each column. File formats live in the std crate.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::detideal::{det, minors, pfaffian, pfaffians};
use crate::error::{Error, Result};
use crate::invariants::{
    ade_recognize, boundary_milnor, milnor, milnor_icis, tjurina_number, Family, SingularityLabel,
};
use crate::jetlin::{colength_with, ColengthResult, ModuleElement};
use crate::matrix::{MatrixGerm, MatrixKind};
use crate::ring::{IntExpr, Poly, VariableSet};
use crate::tangent::{tau, tau_icis, EquivalenceGroup, TangentSettings};
use crate::tjurina::{analyze_transform, b3_threefold};

/// Values of the row parameters for one instance.
pub type Env = BTreeMap<String, i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    TauGl,
    TauSl,
    TauSym,
    TauSymSl,
    TauSk,
    TauSkGl,
    /// A symmetric matrix regarded as an arbitrary square one, under `gl`.
    TauSquare,
    /// A symmetric `3 x 3` matrix plus a generic skew part in three fresh
    /// variables, regarded as an arbitrary square matrix under `gl`.
    TauSquareSkewPart,
    Mu,
    Tau,
    MuBoundary,
    Label,
    MuIcis,
    TauIcis,
    B3,
    Transform,
    RecordedOnly,
}

pub const ALL_CHECKS: [CheckKind; 17] = [
    CheckKind::TauGl,
    CheckKind::TauSl,
    CheckKind::TauSym,
    CheckKind::TauSymSl,
    CheckKind::TauSk,
    CheckKind::TauSkGl,
    CheckKind::TauSquare,
    CheckKind::TauSquareSkewPart,
    CheckKind::Mu,
    CheckKind::Tau,
    CheckKind::MuBoundary,
    CheckKind::Label,
    CheckKind::MuIcis,
    CheckKind::TauIcis,
    CheckKind::B3,
    CheckKind::Transform,
    CheckKind::RecordedOnly,
];

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::TauGl => "tau_gl",
            CheckKind::TauSl => "tau_sl",
            CheckKind::TauSym => "tau_sym",
            CheckKind::TauSymSl => "tau_sym_sl",
            CheckKind::TauSk => "tau_sk",
            CheckKind::TauSkGl => "tau_sk_gl",
            CheckKind::TauSquare => "tau_square",
            CheckKind::TauSquareSkewPart => "tau_square_skew_part",
            CheckKind::Mu => "mu",
            CheckKind::Tau => "tau",
            CheckKind::MuBoundary => "mu_boundary",
            CheckKind::Label => "label",
            CheckKind::MuIcis => "mu_icis",
            CheckKind::TauIcis => "tau_icis",
            CheckKind::B3 => "b3",
            CheckKind::Transform => "transform",
            CheckKind::RecordedOnly => "recorded-only",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        ALL_CHECKS.iter().copied().find(|k| k.name() == s)
    }

    fn group(self) -> Option<EquivalenceGroup> {
        Some(match self {
            CheckKind::TauGl => EquivalenceGroup::Gl,
            CheckKind::TauSl => EquivalenceGroup::Sl,
            CheckKind::TauSym => EquivalenceGroup::Sym,
            CheckKind::TauSymSl => EquivalenceGroup::SymSl,
            CheckKind::TauSk => EquivalenceGroup::Sk,
            CheckKind::TauSkGl => EquivalenceGroup::SkGl,
            _ => return None,
        })
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `A_k`, `D_(k+2)`, `E_6`, `smooth`: a singularity label whose index is an
/// expression in the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct LabelTemplate {
    family: Family,
    index: Option<IntExpr>,
}

impl LabelTemplate {
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = |msg: &str| Error::Syntax { pos: 1, msg: alloc::format!("label '{t}': {msg}") };
        match t {
            "smooth" => return Ok(LabelTemplate { family: Family::Smooth, index: None }),
            "not simple" | "not-simple" => return Ok(LabelTemplate { family: Family::NotSimple, index: None }),
            _ => {}
        }
        let mut chars = t.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad("expected A, D, E or smooth")),
        };
        let rest = chars.as_str();
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        if rest.is_empty() {
            return Err(bad("missing index"));
        }
        let expr = if let Some(inner) = rest.strip_prefix('(') {
            inner.strip_suffix(')').ok_or_else(|| bad("unbalanced parenthesis"))?
        } else {
            rest
        };
        Ok(LabelTemplate { family, index: Some(IntExpr::parse(expr)?) })
    }

    pub fn params(&self) -> Vec<String> {
        self.index.as_ref().map(|e| e.params()).unwrap_or_default()
    }

    /// Evaluates the index; `D_3` is normalized to `A_3`.
    pub fn eval(&self, env: &Env) -> Result<SingularityLabel> {
        let Some(e) = &self.index else {
            return Ok(SingularityLabel::plain(self.family));
        };
        let k = e.eval(env)?;
        let k = u32::try_from(k).map_err(|_| Error::Range(alloc::format!("negative label index {k}")))?;
        match (self.family, k) {
            (Family::D, 3) => SingularityLabel::simple(Family::A, 3),
            (f, k) => SingularityLabel::simple(f, k),
        }
    }
}

/// Parsed expected value; the shape depends on the check kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Expected {
    Int(IntExpr),
    /// `(a, b, c)`.
    Triple([IntExpr; 3]),
    Label(LabelTemplate),
    /// Comma separated labels, or `-` for none.
    Labels(Vec<LabelTemplate>),
    Text(String),
}

impl Expected {
    pub fn parse(kind: CheckKind, text: &str) -> Result<Self> {
        let t = text.trim();
        Ok(match kind {
            CheckKind::RecordedOnly => Expected::Text(t.to_string()),
            CheckKind::Label => Expected::Label(LabelTemplate::parse(t)?),
            CheckKind::Transform => {
                if t == "-" {
                    Expected::Labels(Vec::new())
                } else {
                    Expected::Labels(t.split(',').map(LabelTemplate::parse).collect::<Result<_>>()?)
                }
            }
            CheckKind::MuBoundary => {
                let inner = t
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| Error::Syntax { pos: 1, msg: "expected (a, b, c)".into() })?;
                let parts: Vec<&str> = inner.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::Syntax { pos: 1, msg: "expected three entries".into() });
                }
                Expected::Triple([IntExpr::parse(parts[0])?, IntExpr::parse(parts[1])?, IntExpr::parse(parts[2])?])
            }
            _ => Expected::Int(IntExpr::parse(t)?),
        })
    }

    fn params(&self) -> Vec<String> {
        match self {
            Expected::Int(e) => e.params(),
            Expected::Triple(es) => es.iter().flat_map(|e| e.params()).collect(),
            Expected::Label(l) => l.params(),
            Expected::Labels(ls) => ls.iter().flat_map(|l| l.params()).collect(),
            Expected::Text(_) => Vec::new(),
        }
    }

    /// Renders the expected value for one instance.
    pub fn render(&self, env: &Env) -> Result<String> {
        Ok(match self {
            Expected::Int(e) => e.eval(env)?.to_string(),
            Expected::Triple(es) => {
                alloc::format!("({}, {}, {})", es[0].eval(env)?, es[1].eval(env)?, es[2].eval(env)?)
            }
            Expected::Label(l) => l.eval(env)?.to_string(),
            Expected::Labels(ls) => {
                let mut v = ls.iter().map(|l| l.eval(env).map(|x| x.to_string())).collect::<Result<Vec<_>>>()?;
                v.sort();
                render_list(&v)
            }
            Expected::Text(t) => t.clone(),
        })
    }
}

fn render_list(v: &[String]) -> String {
    if v.is_empty() {
        "-".into()
    } else {
        v.join(", ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub min: i64,
    pub max: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Ge,
    Gt,
    Ne,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Ne => "!=",
        }
    }
}

/// Side condition linking several parameters, e.g. `k <= l`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub lhs: IntExpr,
    pub rel: Relation,
    pub rhs: IntExpr,
}

impl Constraint {
    pub fn parse(text: &str) -> Result<Self> {
        for rel in [Relation::Le, Relation::Ge, Relation::Ne, Relation::Lt, Relation::Gt] {
            if let Some((a, b)) = text.split_once(rel.symbol()) {
                return Ok(Constraint { lhs: IntExpr::parse(a)?, rel, rhs: IntExpr::parse(b)? });
            }
        }
        Err(Error::Syntax { pos: 1, msg: alloc::format!("no comparison in constraint '{text}'") })
    }

    pub fn holds(&self, env: &Env) -> Result<bool> {
        let (a, b) = (self.lhs.eval(env)?, self.rhs.eval(env)?);
        Ok(match self.rel {
            Relation::Le => a <= b,
            Relation::Lt => a < b,
            Relation::Ge => a >= b,
            Relation::Gt => a > b,
            Relation::Ne => a != b,
        })
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs.text(), self.rel.symbol(), self.rhs.text())
    }
}

/// One column: its name, the raw expected text, how to recompute it, and an
/// optional note (the reason for `recorded-only` columns).
#[derive(Clone, Debug, PartialEq)]
pub struct Column {
    pub name: String,
    pub text: String,
    pub kind: CheckKind,
    pub note: Option<String>,
    pub expected: Expected,
}

impl Column {
    pub fn new(name: &str, text: &str, kind: CheckKind, note: Option<&str>) -> Result<Self> {
        let expected = Expected::parse(kind, text)?;
        Ok(Column {
            name: name.to_string(),
            text: text.trim().to_string(),
            kind,
            note: note.map(|s| s.to_string()),
            expected,
        })
    }
}

/// A parametrized family of germs together with its tabulated invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub table: String,
    pub name: String,
    /// Where the row was transcribed from.
    pub source: String,
    pub vars: VariableSet,
    pub kind: MatrixKind,
    /// Entry templates, row by row.
    pub matrix: Vec<Vec<String>>,
    pub params: Vec<Param>,
    pub constraints: Vec<Constraint>,
    pub columns: Vec<Column>,
}

impl TableRow {
    /// Checks names, shapes, and that every expression only mentions
    /// declared parameters. Instantiates the minimal parameter values.
    pub fn validate(&self) -> Result<()> {
        let names: Vec<&str> = self.params.iter().map(|p| p.name.as_str()).collect();
        for (i, p) in self.params.iter().enumerate() {
            if self.vars.index_of(&p.name).is_some() {
                return Err(Error::Variables(alloc::format!("parameter '{}' is also a variable", p.name)));
            }
            if names[..i].contains(&p.name.as_str()) {
                return Err(Error::Variables(alloc::format!("parameter '{}' declared twice", p.name)));
            }
            if matches!(p.max, Some(m) if m < p.min) {
                return Err(Error::Range(alloc::format!("empty range for '{}'", p.name)));
            }
        }
        let known = |n: &String| names.contains(&n.as_str());
        for c in &self.constraints {
            for n in c.lhs.params().iter().chain(c.rhs.params().iter()) {
                if !known(n) {
                    return Err(Error::UnknownVariable { name: n.clone(), pos: 1 });
                }
            }
        }
        for col in &self.columns {
            for n in col.expected.params() {
                if !known(&n) {
                    return Err(Error::UnknownVariable { name: n, pos: 1 });
                }
            }
        }
        for (i, c) in self.columns.iter().enumerate() {
            if self.columns[..i].iter().any(|d| d.name == c.name) {
                return Err(Error::Shape(alloc::format!("column '{}' declared twice", c.name)));
            }
        }
        if self.matrix.is_empty() || self.matrix.iter().any(|r| r.len() != self.matrix[0].len()) {
            return Err(Error::Shape("matrix rows must be nonempty and of equal length".into()));
        }
        let env: Env = self.params.iter().map(|p| (p.name.clone(), p.min)).collect();
        // constraints may exclude the minimal tuple; substitution errors are what matter here
        self.instantiate(&env).map(|_| ())
    }

    /// Parameter tuples with every value at most `bound`, in lexicographic
    /// order of the declared parameters.
    pub fn instances(&self, bound: i64) -> Result<Vec<Env>> {
        let mut out = Vec::new();
        let mut env = Env::new();
        self.enumerate(0, bound, &mut env, &mut out)?;
        Ok(out)
    }

    fn enumerate(&self, i: usize, bound: i64, env: &mut Env, out: &mut Vec<Env>) -> Result<()> {
        if i == self.params.len() {
            for c in &self.constraints {
                if !c.holds(env)? {
                    return Ok(());
                }
            }
            out.push(env.clone());
            return Ok(());
        }
        let p = &self.params[i];
        let hi = p.max.map_or(bound, |m| m.min(bound));
        for v in p.min..=hi {
            env.insert(p.name.clone(), v);
            self.enumerate(i + 1, bound, env, out)?;
        }
        env.remove(&p.name);
        Ok(())
    }

    pub fn instantiate(&self, env: &Env) -> Result<MatrixGerm> {
        let rows = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|e| substitute(e, env)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<Vec<&str>> = rows.iter().map(|r| r.iter().map(|s| s.as_str()).collect()).collect();
        let slices: Vec<&[&str]> = refs.iter().map(|r| r.as_slice()).collect();
        MatrixGerm::parse(&self.vars, self.kind, &slices)
    }
}

/// Replaces parameter identifiers by their values and evaluates
/// parenthesized exponents `^(expr)`.
pub fn substitute(template: &str, env: &Env) -> Result<String> {
    let chars: Vec<char> = template.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '^' {
            out.push('^');
            i += 1;
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '(' {
                let start = i + 1;
                let mut depth = 0;
                let mut j = i;
                while j < chars.len() {
                    match chars[j] {
                        '(' => depth += 1,
                        ')' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    j += 1;
                }
                if j == chars.len() {
                    return Err(Error::Syntax { pos: i + 1, msg: "unbalanced exponent".into() });
                }
                let inner: String = chars[start..j].iter().collect();
                let v = IntExpr::parse(&inner)?.eval(env)?;
                if v < 0 {
                    return Err(Error::Range(alloc::format!("negative exponent {v} in '{template}'")));
                }
                out.push_str(&v.to_string());
                i = j + 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let ident: String = chars[start..i].iter().collect();
            match env.get(&ident) {
                Some(v) if *v < 0 => {
                    out.push('(');
                    out.push_str(&v.to_string());
                    out.push(')');
                }
                Some(v) => out.push_str(&v.to_string()),
                None => out.push_str(&ident),
            }
            continue;
        }
        out.push(c);
        i += 1;
    }
    Ok(out)
}

/// The hypersurface a row stands for: the single entry of a `1 x 1` matrix,
/// otherwise the determinant (or Pfaffian) of a square matrix.
pub fn hypersurface(a: &MatrixGerm) -> Result<Poly> {
    let nv = a.nvars();
    if a.rows() == 1 && a.cols() == 1 {
        return Ok(a.entry(0, 0).clone());
    }
    if a.rows() != a.cols() {
        return Err(Error::Shape("a hypersurface needs a square matrix".into()));
    }
    Ok(match a.kind() {
        MatrixKind::Skew => pfaffian(a.entries(), nv),
        _ => det(a.entries(), nv),
    })
}

/// The entries of `a` as one row, read as a complete intersection.
pub fn entries_row(a: &MatrixGerm) -> Result<MatrixGerm> {
    MatrixGerm::new(a.vars().clone(), MatrixKind::General, vec![a.flatten()])
}

/// `a` plus `[[0,u1,u2],[-u1,0,u3],[-u2,-u3,0]]` in three new variables.
pub fn add_skew_part(a: &MatrixGerm) -> Result<MatrixGerm> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::Shape("the skew part is defined for 3 x 3 matrices".into()));
    }
    let (vars, _) = a.vars().extend_fresh("u", 3);
    let b = a.extend_vars(vars.clone())?;
    let nv = vars.len();
    let base = a.nvars();
    let u = |i: usize| Poly::var(nv, base + i);
    let mut e: Vec<Vec<Poly>> = b.entries().to_vec();
    for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        e[i][j] = e[i][j].add(&u(k));
        e[j][i] = e[j][i].sub(&u(k));
    }
    MatrixGerm::new(vars, MatrixKind::General, e)
}

/// Result of one check on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail { expected: String, got: String },
    Skipped { reason: String },
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }
}

fn certified(r: ColengthResult, what: &str) -> Result<usize> {
    r.value().ok_or(Error::Uncertified { what: what.to_string(), order: r.certified_at })
}

/// Recomputes one column for one instance.
pub fn compute(kind: CheckKind, a: &MatrixGerm, settings: &TangentSettings) -> Result<String> {
    let cfg = &settings.colength;
    if let Some(g) = kind.group() {
        return Ok(certified(tau(a, g, settings)?, "tau")?.to_string());
    }
    Ok(match kind {
        CheckKind::TauSquare => {
            let b = a.with_kind(MatrixKind::General)?;
            certified(tau(&b, EquivalenceGroup::Gl, settings)?, "tau")?.to_string()
        }
        CheckKind::TauSquareSkewPart => {
            let b = add_skew_part(a)?;
            certified(tau(&b, EquivalenceGroup::Gl, settings)?, "tau")?.to_string()
        }
        CheckKind::Mu => certified(milnor(&hypersurface(a)?, cfg)?, "Milnor number")?.to_string(),
        CheckKind::Tau => certified(tjurina_number(&hypersurface(a)?, cfg)?, "Tjurina number")?.to_string(),
        CheckKind::MuBoundary => {
            let t = boundary_milnor(&hypersurface(a)?, 0, cfg)?;
            alloc::format!("({}, {}, {})", t.mu_f, t.mu_restricted, t.mu_boundary)
        }
        CheckKind::Label => ade_recognize(&hypersurface(a)?, cfg)?.to_string(),
        CheckKind::MuIcis => milnor_icis(&a.flatten(), cfg)?.to_string(),
        CheckKind::TauIcis => certified(tau_icis(&entries_row(a)?, settings)?, "tau")?.to_string(),
        CheckKind::B3 => b3_threefold(a, cfg)?.b3.to_string(),
        CheckKind::Transform => {
            let reports = analyze_transform(a, cfg)?;
            let mut v = Vec::new();
            for r in reports {
                if !r.invariants.certified {
                    return Err(Error::Uncertified {
                        what: alloc::format!("chart {}", r.chart.chart + 1),
                        order: r.invariants.certified_at,
                    });
                }
                if !r.invariants.smooth {
                    v.push(r.summary());
                }
            }
            v.sort();
            render_list(&v)
        }
        CheckKind::RecordedOnly => return Err(Error::Unsupported("recorded-only column".into())),
        _ => unreachable!("group checks handled above"),
    })
}

/// Runs one column on one instance and compares exactly.
pub fn check(col: &Column, a: &MatrixGerm, env: &Env, settings: &TangentSettings) -> Outcome {
    if col.kind == CheckKind::RecordedOnly {
        let reason = col.note.clone().unwrap_or_else(|| "recorded only".into());
        return Outcome::Skipped { reason };
    }
    let expected = match col.expected.render(env) {
        Ok(e) => e,
        Err(e) => return Outcome::Fail { expected: col.text.clone(), got: alloc::format!("bad expectation: {e}") },
    };
    match compute(col.kind, a, settings) {
        Ok(got) if got == expected => Outcome::Pass,
        Ok(got) => Outcome::Fail { expected, got },
        Err(e) => Outcome::Fail { expected, got: alloc::format!("error: {e}") },
    }
}

/// Which identity between the trace-free tangent colength and Milnor data
/// applies to a square matrix, given its kind and number of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MilnorIdentity {
    /// `tau_sl = mu(f)`.
    Smoothable,
    /// `tau_sl = mu(f) - colength(submaximal minors)`.
    Isolated,
}

pub fn milnor_identity_case(a: &MatrixGerm) -> Option<MilnorIdentity> {
    if a.rows() != a.cols() || a.rows() < 2 {
        return None;
    }
    let p = a.nvars();
    match (a.kind(), p) {
        (MatrixKind::Symmetric, 2) | (MatrixKind::General, 3) | (MatrixKind::Skew, 5) => {
            Some(MilnorIdentity::Smoothable)
        }
        (MatrixKind::Symmetric, 3) | (MatrixKind::General, 4) | (MatrixKind::Skew, 6) => {
            Some(MilnorIdentity::Isolated)
        }
        _ => None,
    }
}

/// Both sides of the applicable identity, as `(tau_sl, right-hand side)`.
pub fn milnor_identity(a: &MatrixGerm, settings: &TangentSettings) -> Result<Option<(usize, i64)>> {
    let Some(case) = milnor_identity_case(a) else { return Ok(None) };
    if a.kind() == MatrixKind::Skew && a.rows() % 2 == 1 {
        return Ok(None);
    }
    let cfg = &settings.colength;
    let g = match a.kind() {
        MatrixKind::General => EquivalenceGroup::Sl,
        MatrixKind::Symmetric => EquivalenceGroup::SymSl,
        MatrixKind::Skew => EquivalenceGroup::Sk,
    };
    let lhs = certified(tau(a, g, settings)?, "tau_sl")?;
    let f = hypersurface(a)?;
    let mu = certified(milnor(&f, cfg)?, "Milnor number")? as i64;
    let rhs = match case {
        MilnorIdentity::Smoothable => mu,
        MilnorIdentity::Isolated => {
            let m = a.rows();
            let nv = a.nvars();
            let sub: Vec<Poly> = match a.kind() {
                MatrixKind::Skew if m > 2 => pfaffians(a, m / 2 - 1)?.into_iter().map(|(_, q)| q).collect(),
                MatrixKind::Skew => Vec::new(),
                _ => minors(a, m - 1)?.into_iter().map(|(_, _, q)| q).collect(),
            };
            let col = if sub.is_empty() {
                0
            } else {
                let gens: Vec<ModuleElement> = sub.into_iter().map(ModuleElement::scalar).collect();
                certified(colength_with(&gens, 1, nv, cfg)?, "submaximal colength")?
            };
            mu - col as i64
        }
    };
    Ok(Some((lhs, rhs)))
}
