//! Relations between invariants, checked on every encoded normal form.

use std::path::PathBuf;

use germlab::dataset::load_tables;
use germlab_core::invariants::{milnor, quasi_homogeneous, quasi_homogeneous_matrix, tjurina_number};
use germlab_core::table::{hypersurface, Env, TableRow};
use germlab_core::tangent::tau;
use germlab_core::tjurina::{analyze_transform, b3_threefold, tjurina_charts};
use germlab_core::{ColengthConfig, EquivalenceGroup, MatrixGerm, MatrixKind, TangentSettings};

fn instances(file: &str, bound: i64) -> Vec<(TableRow, Env, MatrixGerm)> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(file);
    let mut out = Vec::new();
    for row in load_tables(&path).unwrap() {
        for env in row.instances(bound).unwrap() {
            let a = row.instantiate(&env).unwrap();
            out.push((row.clone(), env, a));
        }
    }
    out
}

const HYPERSURFACE_TABLES: &[&str] = &[
    "ade_hypersurfaces.tables",
    "boundary_singularities.tables",
    "square_2x2_plane.tables",
    "square_2x2_space.tables",
    "square_3x3_plane.tables",
    "symmetric_2x2_plane.tables",
    "symmetric_3x3_plane.tables",
    "skew_4x4_plane.tables",
];

#[test]
fn milnor_bounds_tjurina_on_normal_forms() {
    let cfg = ColengthConfig::default();
    let mut weighted = 0;
    for file in HYPERSURFACE_TABLES {
        for (row, env, a) in instances(file, 4) {
            let f = hypersurface(&a).unwrap();
            let mu = milnor(&f, &cfg).unwrap().value().unwrap();
            let tau = tjurina_number(&f, &cfg).unwrap().value().unwrap();
            assert!(mu >= tau, "{file} {} {env:?}", row.name);
            if quasi_homogeneous(&f).is_some() {
                weighted += 1;
                assert_eq!(mu, tau, "{file} {} {env:?}", row.name);
            }
        }
    }
    assert!(weighted > 50);
}

/// For weighted homogeneous matrices the general and the special group have
/// the same codimension.
#[test]
fn gl_and_sl_agree_on_weighted_normal_forms() {
    let settings = TangentSettings::default();
    let mut seen = 0;
    for file in [
        "square_2x2_plane.tables",
        "square_2x2_space.tables",
        "square_3x3_plane.tables",
        "symmetric_2x2_plane.tables",
        "symmetric_3x3_plane.tables",
        "skew_4x4_plane.tables",
        "cmc2_space_curves.tables",
        "cmc2_surfaces.tables",
    ] {
        for (row, env, a) in instances(file, 3) {
            if quasi_homogeneous_matrix(&a).is_none() {
                continue;
            }
            let (g, s) = match a.kind() {
                MatrixKind::General => (EquivalenceGroup::Gl, EquivalenceGroup::Sl),
                MatrixKind::Symmetric => (EquivalenceGroup::Sym, EquivalenceGroup::SymSl),
                MatrixKind::Skew => (EquivalenceGroup::SkGl, EquivalenceGroup::Sk),
            };
            let tg = tau(&a, g, &settings).unwrap().value();
            let ts = tau(&a, s, &settings).unwrap().value();
            assert_eq!(tg, ts, "{file} {} {env:?}", row.name);
            seen += 1;
        }
    }
    assert!(seen > 50, "{seen}");
}

#[test]
fn threefold_transforms_are_sound() {
    let cfg = ColengthConfig::default();
    for (row, env, a) in instances("cmc2_threefolds.tables", 5) {
        let charts = tjurina_charts(&a, 2).unwrap();
        assert_eq!(charts.len(), a.rows());
        let reports = analyze_transform(&a, &cfg).unwrap();
        for r in &reports {
            assert!(r.chart.check_elimination(), "{} {env:?} chart {}", row.name, r.chart.chart);
        }
        let b = b3_threefold(&a, &cfg).unwrap();
        assert_eq!((b.b0, b.b1, b.b2), (1, 0, 1));
        let mu_sum: usize = reports.iter().map(|r| r.invariants.mu).sum();
        assert_eq!(b.b3, mu_sum);
    }
}
