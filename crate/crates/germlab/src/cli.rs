//! Command dispatch. `run` returns the process exit code.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use germlab_core::detideal::{minors, pfaffians};
use germlab_core::geom::{
    bouquet_descriptor, euler_characteristic, generic_profile, link_homotopy_2xn, milnor_fiber_topology, EulerInputs,
};
use germlab_core::invariants::{
    ade_recognize, boundary_milnor, milnor, milnor_icis, quasi_homogeneous, quasi_homogeneous_matrix,
    tjurina_number,
};
use germlab_core::table::hypersurface;
use germlab_core::tangent::{determinacy_bound, miniversal_unfolding, tau};
use germlab_core::tjurina::{analyze_transform, b3_threefold, OffOrigin};
use germlab_core::{ColengthResult, EquivalenceGroup, Error as CoreError, MatrixGerm, MatrixKind, TangentSettings};
use serde_json::{json, Value};

use crate::dataset::load_tables;
use crate::germfile::parse_germ_file;
use crate::verify::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNCERTIFIED: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "germlab", version, about = "Invariants of matrix singularities defined by minors and Pfaffians")]
pub struct Cli {
    /// Highest jet order tried before giving up as uncertified.
    #[arg(long, global = true, env = "GERMLAB_MAX_ORDER", default_value_t = 64)]
    pub max_order: u32,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Reject matrices with unit entries instead of reducing them.
    #[arg(long, global = true)]
    pub strict_units: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_group(s: &str) -> Result<EquivalenceGroup, String> {
    EquivalenceGroup::parse(s).ok_or_else(|| format!("unknown group `{s}` (expected gl, sl, sym, sym-sl, sk, sk-gl)"))
}

fn parse_kind(s: &str) -> Result<MatrixKind, String> {
    MatrixKind::parse(s).ok_or_else(|| format!("unknown kind `{s}` (expected general, symmetric, skew)"))
}

fn parse_assignment(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    let v = v.trim().parse().map_err(|_| format!("bad integer in `{s}`"))?;
    Ok((k.trim().to_string(), v))
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tangent colength under a matrix equivalence group.
    Tau {
        #[arg(long, default_value = "gl", value_parser = parse_group)]
        group: EquivalenceGroup,
        file: PathBuf,
    },
    /// Milnor number of the entry of a 1x1 germ, or of the determinant (Pfaffian).
    Mu { file: PathBuf },
    /// Tjurina number of the same hypersurface.
    Tjurina { file: PathBuf },
    /// Milnor numbers of a boundary singularity.
    MuBoundary {
        #[arg(long)]
        boundary: String,
        file: PathBuf,
    },
    /// Milnor number of the complete intersection cut out by the entries.
    MuIcis { file: PathBuf },
    /// Finite determinacy bound.
    Determinacy {
        #[arg(long, default_value = "gl", value_parser = parse_group)]
        group: EquivalenceGroup,
        file: PathBuf,
    },
    /// Monomial basis of a miniversal unfolding.
    Unfold {
        #[arg(long, default_value = "gl", value_parser = parse_group)]
        group: EquivalenceGroup,
        file: PathBuf,
    },
    /// The t x t minors.
    Minors {
        #[arg(short = 't')]
        t: usize,
        file: PathBuf,
    },
    /// The 2s x 2s Pfaffians of a skew matrix.
    Pfaffians {
        #[arg(short = 's')]
        s: usize,
        file: PathBuf,
    },
    /// Charts of the Tjurina transform and their singularities.
    TjurinaTransform { file: PathBuf },
    /// Third Betti number of the Milnor fibre of a 3-fold given by a 2x3 matrix.
    B3 { file: PathBuf },
    /// A-D-E recognition of the hypersurface.
    Recognize { file: PathBuf },
    /// Quasi-homogeneous weights.
    Qh { file: PathBuf },
    /// Closed formulas for generic determinantal varieties.
    Geom {
        #[command(subcommand)]
        command: GeomCommand,
    },
    /// Recompute the tabulated columns of a dataset.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_param: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum GeomCommand {
    /// Codimension, dimension, smoothability and link data of {rank < s}.
    Profile {
        #[arg(value_parser = parse_kind)]
        kind: MatrixKind,
        m: usize,
        n: usize,
        s: usize,
        p: usize,
    },
    /// Homotopy type of the determinantal link of 2 x n matrices in p variables.
    Link2xn { n: usize, p: usize },
    /// Euler characteristic of an essential smoothing.
    Euler {
        m: usize,
        n: usize,
        s: usize,
        p: usize,
        /// `r=value`, one per stratum (bouquet mode).
        #[arg(long = "lambda", value_parser = parse_assignment)]
        lambdas: Vec<(String, i64)>,
        /// Reduced Euler characteristic of the link (bouquet mode).
        #[arg(long)]
        link_euler: Option<i64>,
        /// `r,i=value` polar multiplicities (polar mode).
        #[arg(long = "polar", value_parser = parse_assignment)]
        polar: Vec<(String, i64)>,
    },
    /// Cohomology and stable homotopy of the Milnor fibre of the generic hypersurface.
    Fiber {
        #[arg(value_parser = parse_kind)]
        kind: MatrixKind,
        m: usize,
    },
}

/// A failed run: message for standard error plus exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = if matches!(e, CoreError::Uncertified { .. }) { EXIT_UNCERTIFIED } else { EXIT_INPUT };
        Failure { code, msg: e.to_string() }
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, msg: msg.into() }
}

/// What a command produced.
pub struct Output {
    pub text: String,
    pub json: Value,
    /// Some colength in the run did not certify.
    pub uncertified: bool,
    pub mismatch: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, uncertified: false, mismatch: false }
    }
}

fn read_germ(path: &Path) -> Result<MatrixGerm, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_germ_file(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn echo(a: &MatrixGerm) -> Value {
    json!({ "vars": a.vars().names(), "kind": a.kind().name(), "matrix": a.display_rows() })
}

fn with_input(command: &str, a: &MatrixGerm, result: Value) -> Value {
    json!({ "command": command, "input": echo(a), "result": result })
}

/// A dimension with its certificate, in both output forms.
fn dimension(name: &str, r: &ColengthResult) -> (String, Value) {
    if r.certified {
        (
            format!("{} (certified at order {})", r.dim, r.certified_at),
            json!({ name: r.dim, "certified": true, "certified_at": r.certified_at }),
        )
    } else {
        (
            format!("not certified up to order {} (truncated count {})", r.certified_at, r.dim),
            json!({ name: Value::Null, "certified": false, "certified_at": r.certified_at }),
        )
    }
}

fn colength_output(command: &str, name: &str, a: &MatrixGerm, r: &ColengthResult, extra: Value) -> Output {
    let (text, mut res) = dimension(name, r);
    if let (Value::Object(m), Value::Object(e)) = (&mut res, extra) {
        for (k, v) in e {
            m.insert(k, v);
        }
    }
    let mut out = Output::new(text, with_input(command, a, res));
    out.uncertified = !r.certified;
    out
}

fn group_of(a: &MatrixGerm, g: EquivalenceGroup) -> Result<(), Failure> {
    if a.kind() != g.kind() {
        return Err(input(format!("group {g} acts on {} matrices, the file declares {}", g.kind(), a.kind())));
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<Output, Failure> {
    let settings = TangentSettings { strict_units: cli.strict_units, ..TangentSettings::with_max_order(cli.max_order) };
    let cfg = &settings.colength;
    Ok(match &cli.command {
        Command::Tau { group, file } => {
            let a = read_germ(file)?;
            group_of(&a, *group)?;
            let r = tau(&a, *group, &settings)?;
            colength_output("tau", "tau", &a, &r, json!({ "group": group.name() }))
        }
        Command::Mu { file } => {
            let a = read_germ(file)?;
            let f = hypersurface(&a)?;
            let r = milnor(&f, cfg)?;
            colength_output("mu", "mu", &a, &r, json!({ "polynomial": f.display(a.vars()) }))
        }
        Command::Tjurina { file } => {
            let a = read_germ(file)?;
            let f = hypersurface(&a)?;
            let r = tjurina_number(&f, cfg)?;
            colength_output("tjurina", "tau", &a, &r, json!({ "polynomial": f.display(a.vars()) }))
        }
        Command::MuBoundary { boundary, file } => {
            let a = read_germ(file)?;
            let b = a.vars().index_of(boundary).ok_or_else(|| input(format!("unknown boundary variable `{boundary}`")))?;
            let f = hypersurface(&a)?;
            let t = boundary_milnor(&f, b, cfg)?;
            let [o1, o2, o3] = t.certified_at;
            Output::new(
                format!("({}, {}, {}) (certified at orders {o1}, {o2}, {o3})", t.mu_f, t.mu_restricted, t.mu_boundary),
                with_input(
                    "mu-boundary",
                    &a,
                    json!({
                        "boundary": boundary,
                        "mu": t.mu_f,
                        "mu_restricted": t.mu_restricted,
                        "mu_boundary": t.mu_boundary,
                        "certified": true,
                        "certified_at": t.certified_at,
                    }),
                ),
            )
        }
        Command::MuIcis { file } => {
            let a = read_germ(file)?;
            let mu = milnor_icis(&a.flatten(), cfg)?;
            Output::new(format!("{mu} (certified)"), with_input("mu-icis", &a, json!({ "mu": mu, "certified": true })))
        }
        Command::Determinacy { group, file } => {
            let a = read_germ(file)?;
            group_of(&a, *group)?;
            let k = determinacy_bound(&a, *group, &settings)?;
            Output::new(
                format!("{k}-determined under {group}"),
                with_input("determinacy", &a, json!({ "group": group.name(), "determinacy": k })),
            )
        }
        Command::Unfold { group, file } => {
            let a = read_germ(file)?;
            group_of(&a, *group)?;
            let u = miniversal_unfolding(&a, *group, &settings)?;
            let labels = u.labels();
            let mut text = format!("tau = {} (certified at order {})\n", u.tau, u.certified_at);
            for l in &labels {
                text.push_str(&format!("  {l}\n"));
            }
            Output::new(
                text.trim_end().to_string(),
                with_input(
                    "unfold",
                    &a,
                    json!({ "group": group.name(), "tau": u.tau, "certified_at": u.certified_at, "basis": labels }),
                ),
            )
        }
        Command::Minors { t, file } => {
            let a = read_germ(file)?;
            let ms = minors(&a, *t)?;
            let mut text = String::new();
            let mut list = Vec::new();
            for (r, c, p) in &ms {
                let (r1, c1): (Vec<usize>, Vec<usize>) = (r.0.iter().map(|i| i + 1).collect(), c.0.iter().map(|i| i + 1).collect());
                let v = p.display(a.vars());
                text.push_str(&format!("rows {r1:?} cols {c1:?}: {v}\n"));
                list.push(json!({ "rows": r1, "cols": c1, "value": v }));
            }
            Output::new(text.trim_end().to_string(), with_input("minors", &a, json!({ "t": t, "minors": list })))
        }
        Command::Pfaffians { s, file } => {
            let a = read_germ(file)?;
            let ps = pfaffians(&a, *s)?;
            let mut text = String::new();
            let mut list = Vec::new();
            for (idx, p) in &ps {
                let i1: Vec<usize> = idx.0.iter().map(|i| i + 1).collect();
                let v = p.display(a.vars());
                text.push_str(&format!("indices {i1:?}: {v}\n"));
                list.push(json!({ "indices": i1, "value": v }));
            }
            Output::new(text.trim_end().to_string(), with_input("pfaffians", &a, json!({ "s": s, "pfaffians": list })))
        }
        Command::TjurinaTransform { file } => {
            let a = read_germ(file)?;
            let reports = analyze_transform(&a, cfg)?;
            let mut text = String::new();
            let mut charts = Vec::new();
            let mut uncertified = false;
            for r in &reports {
                let inv = &r.invariants;
                uncertified |= !inv.certified;
                let off = match r.chart.off_origin {
                    OffOrigin::Clear => "clear",
                    OffOrigin::Detected => "detected",
                    OffOrigin::Unchecked => "unchecked",
                };
                let status = if inv.certified {
                    format!("mu = {}, tau = {} (certified at order {})", inv.mu, inv.tau, inv.certified_at)
                } else {
                    format!("not certified up to order {}", inv.certified_at)
                };
                text.push_str(&format!(
                    "chart {}: {}; {status}; off-origin singularities: {off}\n",
                    r.chart.chart + 1,
                    if inv.smooth { "smooth".to_string() } else { r.summary() },
                ));
                charts.push(json!({
                    "chart": r.chart.chart + 1,
                    "smooth": inv.smooth,
                    "label": inv.label.map(|l| l.to_string()),
                    "mu": inv.mu,
                    "tau": inv.tau,
                    "certified": inv.certified,
                    "certified_at": inv.certified_at,
                    "off_origin": off,
                }));
            }
            let mut out =
                Output::new(text.trim_end().to_string(), with_input("tjurina-transform", &a, json!({ "charts": charts })));
            out.uncertified = uncertified;
            out
        }
        Command::B3 { file } => {
            let a = read_germ(file)?;
            let b = b3_threefold(&a, cfg)?;
            Output::new(
                format!("b0 = {}, b1 = {}, b2 = {}, b3 = {} (certified)", b.b0, b.b1, b.b2, b.b3),
                with_input("b3", &a, json!({ "b0": b.b0, "b1": b.b1, "b2": b.b2, "b3": b.b3, "certified": true })),
            )
        }
        Command::Recognize { file } => {
            let a = read_germ(file)?;
            let f = hypersurface(&a)?;
            let mu = milnor(&f, cfg)?;
            if !mu.certified {
                return Err(CoreError::Uncertified { what: "Milnor number".into(), order: mu.certified_at }.into());
            }
            let label = ade_recognize(&f, cfg)?;
            Output::new(
                format!("{label} (mu = {}, certified at order {})", mu.dim, mu.certified_at),
                with_input(
                    "recognize",
                    &a,
                    json!({ "polynomial": f.display(a.vars()), "label": label.to_string(), "mu": mu.dim }),
                ),
            )
        }
        Command::Qh { file } => {
            let a = read_germ(file)?;
            let show = |v: &[germlab_core::Rational]| v.iter().map(|q| q.to_string()).collect::<Vec<_>>();
            if a.rows() == 1 && a.cols() == 1 {
                match quasi_homogeneous(a.entry(0, 0)) {
                    Some(w) => Output::new(
                        format!("weights ({}), degree {}", show(w.weights()).join(", "), w.degree()),
                        with_input(
                            "qh",
                            &a,
                            json!({ "quasi_homogeneous": true, "weights": show(w.weights()), "degree": w.degree().to_string() }),
                        ),
                    ),
                    None => Output::new(
                        "not quasi-homogeneous".into(),
                        with_input("qh", &a, json!({ "quasi_homogeneous": false })),
                    ),
                }
            } else {
                match quasi_homogeneous_matrix(&a) {
                    Some(w) => Output::new(
                        format!(
                            "weights ({}), row degrees ({}), column degrees ({})",
                            show(&w.weights).join(", "),
                            show(&w.rows).join(", "),
                            show(&w.cols).join(", ")
                        ),
                        with_input(
                            "qh",
                            &a,
                            json!({ "quasi_homogeneous": true, "weights": show(&w.weights), "rows": show(&w.rows), "cols": show(&w.cols) }),
                        ),
                    ),
                    None => Output::new(
                        "not quasi-homogeneous".into(),
                        with_input("qh", &a, json!({ "quasi_homogeneous": false })),
                    ),
                }
            }
        }
        Command::Geom { command } => geom(command)?,
        Command::Verify { file, max_param, jobs } => {
            let rows = load_tables(file).map_err(|e| input(e.to_string()))?;
            let report = verify(&rows, *max_param, *jobs, &settings);
            let mut out = Output::new(
                report.render().trim_end().to_string(),
                json!({ "command": "verify", "file": file.display().to_string(), "max_param": max_param, "report": report }),
            );
            out.mismatch = report.counts.fail > 0;
            out
        }
    })
}

fn geom(c: &GeomCommand) -> Result<Output, Failure> {
    Ok(match c {
        GeomCommand::Profile { kind, m, n, s, p } => {
            let g = generic_profile(*kind, *m, *n, *s, *p)?;
            let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_else(|| "n/a".into());
            Output::new(
                format!(
                    "expected codimension {}\nvariety dimension {}\nisolated {}\nsmoothable {}\nlink reduced Euler characteristic {}\nEuler obstruction {}",
                    g.expected_codim,
                    g.variety_dim,
                    g.isolated,
                    g.smoothable,
                    opt(g.link_reduced_euler),
                    opt(g.euler_obstruction)
                ),
                json!({
                    "command": "geom profile",
                    "input": { "kind": kind.name(), "m": m, "n": n, "s": s, "p": p },
                    "result": {
                        "expected_codim": g.expected_codim,
                        "ambient_dim": g.ambient_dim,
                        "variety_dim": g.variety_dim,
                        "isolated": g.isolated,
                        "smoothable": g.smoothable,
                        "link_reduced_euler": g.link_reduced_euler,
                        "euler_obstruction": g.euler_obstruction,
                    }
                }),
            )
        }
        GeomCommand::Link2xn { n, p } => {
            let d = link_homotopy_2xn(*n, *p)?;
            Output::new(
                d.to_string(),
                json!({
                    "command": "geom link2xn",
                    "input": { "n": n, "p": p },
                    "result": { "homotopy_type": d.to_string(), "reduced_euler": d.reduced_euler() }
                }),
            )
        }
        GeomCommand::Euler { m, n, s, p, lambdas, link_euler, polar } => {
            if !polar.is_empty() && (!lambdas.is_empty() || link_euler.is_some()) {
                return Err(input("use either --polar or --lambda/--link-euler, not both"));
            }
            let (inputs, mode) = if polar.is_empty() {
                let mut ls = BTreeMap::new();
                for (k, v) in lambdas {
                    let r: usize = k.parse().map_err(|_| input(format!("bad stratum index `{k}`")))?;
                    ls.insert(r, *v);
                }
                let le = link_euler.ok_or_else(|| input("bouquet mode needs --link-euler"))?;
                (EulerInputs::Bouquet { lambdas: ls, link_euler: le }, "bouquet")
            } else {
                let mut ms = BTreeMap::new();
                for (k, v) in polar {
                    let (r, i) = k.split_once(',').ok_or_else(|| input(format!("expected r,i=value, got `{k}`")))?;
                    let r: usize = r.trim().parse().map_err(|_| input(format!("bad index in `{k}`")))?;
                    let i: usize = i.trim().parse().map_err(|_| input(format!("bad index in `{k}`")))?;
                    ms.insert((r, i), *v);
                }
                (EulerInputs::Polar { multiplicities: ms }, "polar")
            };
            let chi = euler_characteristic(*m, *n, *s, *p, &inputs)?;
            let (label, descriptor) = match &inputs {
                EulerInputs::Bouquet { lambdas, .. } => {
                    let counts: BTreeMap<usize, u32> =
                        lambdas.iter().filter(|(_, v)| **v >= 0).map(|(k, v)| (*k, *v as u32)).collect();
                    ("reduced Euler characteristic", Some(bouquet_descriptor(*m, *n, *s, *p, &counts).to_string()))
                }
                EulerInputs::Polar { .. } => ("Euler characteristic", None),
            };
            let mut text = format!("{label} {chi}");
            if let Some(d) = &descriptor {
                text.push_str(&format!("\nhomotopy type {d}"));
            }
            Output::new(
                text,
                json!({
                    "command": "geom euler",
                    "input": { "m": m, "n": n, "s": s, "p": p, "mode": mode },
                    "result": { "euler": chi, "reduced": mode == "bouquet", "homotopy_type": descriptor }
                }),
            )
        }
        GeomCommand::Fiber { kind, m } => {
            let t = milnor_fiber_topology(*kind, *m)?;
            let groups: Vec<String> = (0..t.stable_bound).map(|j| t.homotopy_group(j).unwrap().to_string()).collect();
            let degs = |v: &[u32]| v.iter().map(|d| format!("e{d}")).collect::<Vec<_>>().join(", ");
            let mut text = format!("rational cohomology: exterior algebra on {}", degs(&t.generators));
            if let Some(g) = t.module_generator {
                text.push_str(&format!(", free module on 1, e{g}"));
            }
            if !t.mod2_generators.is_empty() {
                text.push_str(&format!("\nmod 2 cohomology: exterior algebra on {}", degs(&t.mod2_generators)));
            }
            text.push_str(&format!("\npi_j for j < {}: {}", t.stable_bound, groups.join(", ")));
            text.push_str(&format!("\ncomplex link of the generic hypersurface: S^{}", t.link_sphere));
            Output::new(
                text,
                json!({
                    "command": "geom fiber",
                    "input": { "kind": kind.name(), "m": m },
                    "result": {
                        "generators": t.generators,
                        "module_generator": t.module_generator,
                        "mod2_generators": t.mod2_generators,
                        "stable_bound": t.stable_bound,
                        "homotopy_groups": groups,
                        "link_sphere": t.link_sphere,
                    }
                }),
            )
        }
    })
}

/// Runs the command line and writes to the given streams.
pub fn run_with(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json"))
            } else {
                writeln!(out, "{}", o.text)
            };
            if o.uncertified {
                EXIT_UNCERTIFIED
            } else if o.mismatch {
                EXIT_MISMATCH
            } else {
                EXIT_OK
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

pub fn run(args: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
