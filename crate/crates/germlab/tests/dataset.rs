use std::path::{Path, PathBuf};

use germlab::dataset::{load_tables, parse_dataset, write_dataset, DatasetError};
use germlab::verify::{verify, OutcomeRecord};
use germlab_core::TangentSettings;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn shipped() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(data_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "tables"))
        .collect();
    v.sort();
    v
}

#[test]
fn shipped_files_are_canonical() {
    let files = shipped();
    assert_eq!(files.len(), 16);
    for f in files {
        let text = std::fs::read_to_string(&f).unwrap();
        let rows = parse_dataset(&text).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
        assert_eq!(write_dataset(&rows), text, "{}", f.display());
        assert_eq!(parse_dataset(&write_dataset(&rows)).unwrap(), rows);
        for r in &rows {
            assert!(r.source.starts_with("tab:"), "{} {}", f.display(), r.name);
        }
    }
}

#[test]
fn row_family_counts() {
    let count = |name: &str| load_tables(&data_dir().join(name)).unwrap().len();
    assert_eq!(count("ade_hypersurfaces.tables"), 5);
    assert_eq!(count("cmc2_threefolds.tables"), 28);
    assert_eq!(count("cmc2_surfaces.tables"), 20);
    assert_eq!(count("cmc2_fourfolds.tables"), 23);
    assert!(parse_dataset("").unwrap().is_empty());
}

#[test]
fn schema_errors_carry_a_locator() {
    let text = "row: A\ntable: t\nsource: s\nvars: x\nkind: general\nmatrix:\n  [ x^2 ]\nparams: none\nexpected:\n  mu = 1\nchecks:\n  mu: bogus\nend\n";
    match parse_dataset(text).unwrap_err() {
        DatasetError::Schema { line, row, msg } => {
            assert_eq!(line, 12);
            assert_eq!(row.as_deref(), Some("A"));
            assert!(msg.contains("bogus"), "{msg}");
        }
        e => panic!("{e}"),
    }
    let missing = text.replace("source: s\n", "");
    assert!(matches!(parse_dataset(&missing), Err(DatasetError::Schema { .. })));
    let undeclared = text.replace("mu = 1", "mu = k").replace("bogus", "mu");
    assert!(parse_dataset(&undeclared).is_err());
    assert!(matches!(load_tables(Path::new("/nonexistent.tables")), Err(DatasetError::Io { .. })));
}

#[test]
fn a_corrupted_value_gives_one_failure() {
    let text = std::fs::read_to_string(data_dir().join("ade_hypersurfaces.tables")).unwrap();
    let settings = TangentSettings::default();
    let clean = verify(&parse_dataset(&text).unwrap(), 4, 2, &settings);
    assert_eq!(clean.counts.fail, 0);
    let corrupted = text.replacen("  tau = 7\n", "  tau = 8\n", 1);
    assert_ne!(corrupted, text);
    let report = verify(&parse_dataset(&corrupted).unwrap(), 4, 2, &settings);
    assert_eq!(report.counts.fail, 1);
    let (inst, col) = report.failures().next().unwrap();
    assert_eq!(col.column, "tau");
    assert_eq!(col.outcome, OutcomeRecord::Fail { expected: "8".into(), got: "7".into() });
    assert!(inst.row.starts_with('E'));
}

#[test]
fn reports_are_deterministic() {
    let rows = load_tables(&data_dir().join("square_2x2_plane.tables")).unwrap();
    let settings = TangentSettings::default();
    let a = verify(&rows, 3, 1, &settings);
    let b = verify(&rows, 3, 1, &settings);
    let c = verify(&rows, 3, 4, &settings);
    assert_eq!(a.outcomes(), b.outcomes());
    assert_eq!(a.outcomes(), c.outcomes());
    assert_eq!(a.counts, c.counts);
}

#[test]
fn rows_without_instances_are_skipped() {
    let text = "row: A\ntable: t\nsource: s\nvars: x\nkind: general\nmatrix:\n  [ x^(k+1) ]\nparams: k >= 7\nexpected:\n  mu = k\nchecks:\n  mu: mu\nend\n";
    let report = verify(&parse_dataset(text).unwrap(), 4, 1, &TangentSettings::default());
    assert_eq!(report.counts.skipped, 1);
    assert_eq!(report.counts.fail, 0);
}
