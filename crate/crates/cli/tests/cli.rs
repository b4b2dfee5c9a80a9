use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use specsym_cli::document::OperatorDocument;
use specsym_cli::{cmd_check, CheckOptions};
use specsym_core::constructions::{broken_case, symmetric_case};
use specsym_core::Tolerance;

fn specsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn diag_doc(a: f64, b: f64) -> String {
    format!(r#"{{"kind": "matrix", "dim": 2, "re": [[{a}, 0], [0, {b}]], "im": [[0, 0], [0, 0]]}}"#)
}

/// CSV body rows parsed as numbers after the first `skip` columns.
fn numeric_rows(text: &str, skip: usize) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').skip(skip).map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn traces_of_a_reflection() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "r.json", &diag_doc(1.0, -1.0));
    let out = specsym(&["traces", p.to_str().unwrap(), "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n,re,im\n"));
    let rows = numeric_rows(&text, 0);
    let want = [[1.0, 0.0, 0.0], [2.0, 2.0, 0.0], [3.0, 0.0, 0.0], [4.0, 2.0, 0.0]];
    assert_eq!(rows.len(), 4);
    for (row, w) in rows.iter().zip(want) {
        assert_eq!(row.as_slice(), w.as_slice());
    }
}

#[test]
fn det_coefficients_of_identity() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "i.json", &diag_doc(1.0, 1.0));
    let out = specsym(&["det", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows = numeric_rows(&stdout(&out), 0);
    assert_eq!(
        rows,
        vec![vec![0.0, 1.0, 0.0], vec![1.0, 2.0, 0.0], vec![2.0, 1.0, 0.0]]
    );
}

#[test]
fn det_zeros_are_reciprocal_eigenvalues() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "d.json", &diag_doc(2.0, -2.0));
    let out = specsym(&["det", p.to_str().unwrap(), "--emit", "zeros"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let zeros: Vec<f64> = text
        .lines()
        .filter(|l| l.starts_with("zero,"))
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let inverses: Vec<f64> = text
        .lines()
        .filter(|l| l.starts_with("inverse,"))
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let mut zeros_sorted = zeros.clone();
    zeros_sorted.sort_by(f64::total_cmp);
    let mut inverses_sorted = inverses.clone();
    inverses_sorted.sort_by(f64::total_cmp);
    assert_eq!(zeros_sorted.len(), 2);
    assert!((zeros_sorted[0] + 0.5).abs() < 1e-12 && (zeros_sorted[1] - 0.5).abs() < 1e-12);
    assert!((inverses_sorted[0] + 2.0).abs() < 1e-12 && (inverses_sorted[1] - 2.0).abs() < 1e-12);
}

#[test]
fn spectrum_lists_multiplicities() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "i.json", &diag_doc(3.0, 3.0));
    let out = specsym(&["spectrum", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows = numeric_rows(&stdout(&out), 0);
    assert_eq!(rows.len(), 1);
    assert!((rows[0][0] - 3.0).abs() < 1e-12);
    assert_eq!(rows[0][2], 2.0);
}

#[test]
fn order_below_two_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "r.json", &diag_doc(1.0, -1.0));
    let out = specsym(&["check", p.to_str().unwrap(), "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_order_without_expectation_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "r.json", &diag_doc(1.0, -1.0));
    let out = specsym(&["check", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--d"));
}

#[test]
fn malformed_document_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "bad.json",
        "{\"kind\": \"matrix\", \"dim\": 2,\n \"re\": [[1, \"x\"], [0, 1]], \"im\": [[0, 0], [0, 0]]}",
    );
    let out = specsym(&["check", p.to_str().unwrap(), "--d", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("re"), "{err}");
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = specsym(&["traces", "/nonexistent/operator.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dimension_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "m.json",
        r#"{"kind": "matrix", "dim": 3, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}"#,
    );
    assert_eq!(specsym(&["traces", p.to_str().unwrap()]).status.code(), Some(2));
}

fn save(dir: &Path, name: &str, t: &specsym_core::DenseOperator) -> PathBuf {
    write(dir, name, &OperatorDocument::from_matrix(t, None, None).to_json())
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let sym = save(dir.path(), "sym.json", &symmetric_case::<f64>(3, 3, 11).unwrap());
    let broken = save(dir.path(), "broken.json", &broken_case::<f64>(3, 3, 0.05, 11).unwrap());
    let out = specsym(&["check", sym.to_str().unwrap(), "--d", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = specsym(&["check", broken.to_str().unwrap(), "--d", "3"]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
}

#[test]
fn report_is_valid_toml() {
    let dir = tempfile::tempdir().unwrap();
    let p = save(dir.path(), "b.json", &broken_case::<f64>(2, 2, 0.05, 3).unwrap());
    let out = specsym(&["check", p.to_str().unwrap(), "--d", "2", "--K", "1"]);
    let report: toml::Table = stdout(&out).parse().unwrap();
    assert_eq!(report["d"].as_integer(), Some(2));
    assert_eq!(report["k"].as_integer(), Some(1));
    assert_eq!(report["verdict"].as_bool(), Some(false));
    assert_eq!(report["status"].as_str(), Some("asymmetric"));
    for section in ["determinant", "spectral", "trace"] {
        let s = report[section].as_table().unwrap();
        assert_eq!(s["verdict"].as_bool(), Some(false), "{section}");
        assert!(s.contains_key("witness_kind"), "{section}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let p = save(dir.path(), "s.json", &symmetric_case::<f64>(2, 4, 5).unwrap());
    let args = ["check", p.to_str().unwrap(), "--d", "4"];
    let a = specsym(&args);
    let b = specsym(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn binary_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let t = broken_case::<f64>(2, 3, 0.05, 8).unwrap();
    let p = save(dir.path(), "b.json", &t);
    let doc = OperatorDocument::load(&p).unwrap();
    let options = CheckOptions {
        d: Some(3),
        k: None,
        n_max: None,
        tol: Tolerance::default(),
    };
    let lib = cmd_check(&doc, options).unwrap();
    let bin = specsym(&["check", p.to_str().unwrap(), "--d", "3"]);
    assert_eq!(lib.stdout, stdout(&bin));
    assert_eq!(Some(i32::from(lib.code)), bin.status.code());
}

#[test]
fn short_trace_window_can_disagree() {
    let dir = tempfile::tempdir().unwrap();
    // spectrum {1, 1, -2} has trace zero but trace(T^3) = -6, so a window
    // of two powers misses the asymmetry
    let p = write(
        dir.path(),
        "w.json",
        r#"{"kind": "matrix", "dim": 3, "re": [[1, 0, 0], [0, -2, 0], [0, 0, 1]], "im": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]}"#,
    );
    let out = specsym(&["check", p.to_str().unwrap(), "--d", "2", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    let full = specsym(&["check", p.to_str().unwrap(), "--d", "2"]);
    assert_eq!(full.status.code(), Some(1));
}

#[test]
fn gallery_writes_manifest_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = specsym(&[
        "gallery",
        "kron-d2",
        "--out",
        dir.path().to_str().unwrap(),
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let manifest = dir.path().join("manifest.csv");
    assert!(manifest.exists());
    let verify = specsym(&["verify", manifest.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0), "{}", stdout(&verify));
    assert!(stdout(&verify).lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn representation_traces_include_nuclear_trace() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "u.json",
        r#"{"kind": "representation", "ambient_p": "inf", "dim": 2,
            "terms": [{"mu": {"re": 0.5, "im": 0},
                       "functional": {"re": [1, 0], "im": [0, 0]},
                       "vector": {"re": [1, 0], "im": [0, 0]}},
                      {"mu": {"re": 0.5, "im": 0},
                       "functional": {"re": [0, 1], "im": [0, 0]},
                       "vector": {"re": [0, 1], "im": [0, 0]}}]}"#,
    );
    let out = specsym(&["traces", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let nuclear = text.lines().find(|l| l.starts_with("nuclear,")).unwrap();
    let re: f64 = nuclear.split(',').nth(1).unwrap().parse().unwrap();
    assert!((re - 1.0).abs() < 1e-15);
}
