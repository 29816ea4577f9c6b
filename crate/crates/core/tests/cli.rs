//! End-to-end tests of the command-line interface.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

use morrey::families::FamilySpec;
use morrey::instance::{AtomSpec, InstanceFile, ParamSet};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morrey"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_line<'a>(output: &'a Output, prefix: &str) -> Option<String> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .find(|l| l.starts_with(prefix))
        .map(|l| l.to_string())
}

fn two_atom_instance(values: Vec<f64>) -> InstanceFile {
    let mut functions = BTreeMap::new();
    functions.insert("f".to_string(), values);
    InstanceFile {
        dimension: 1,
        growth_exponent: 1.0,
        atoms: vec![
            AtomSpec { position: vec![0.0], mass: 1.0 },
            AtomSpec { position: vec![1.0], mass: 1.0 },
        ],
        functions,
        params: ParamSet { p: 2.0, q: 1.0, k: 2.0, beta: 5.0, r: 2.0, alpha: 0.5 },
        family: FamilySpec::Exact1d { k: 2.0 },
    }
}

#[test]
fn gen_is_deterministic_and_loadable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = run(&[
            "gen", "--atoms", "4", "--seed", "9", "--output", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    InstanceFile::load(&a).unwrap();
}

#[test]
fn gen_corpus_mode_writes_numbered_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "gen", "--count", "3", "--seed", "5", "--output", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for i in 0..3 {
        assert!(dir.path().join(format!("{i:03}.json")).exists());
    }
}

#[test]
fn norms_reports_the_two_atom_value() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    two_atom_instance(vec![1.0, 2.0]).save(&path).unwrap();
    let out = run(&["norms", "--input", path.to_str().unwrap(), "--norm", "morrey"]);
    assert!(out.status.success());
    let line = stdout_line(&out, "value: ").expect("value line");
    let value: f64 = line["value: ".len()..].parse().unwrap();
    let expected = 3.0 / 2f64.sqrt();
    assert!((value - expected).abs() <= 1e-12 * expected, "{value} vs {expected}");
    assert!(stdout_line(&out, "argmax: ").is_some());
}

#[test]
fn norms_of_a_constant_vanish() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    two_atom_instance(vec![3.0, 3.0]).save(&path).unwrap();
    let out = run(&["norms", "--input", path.to_str().unwrap(), "--norm", "campanato"]);
    assert!(out.status.success());
    assert_eq!(stdout_line(&out, "value: ").unwrap(), "value: 0");
}

#[test]
fn norms_warns_when_p_equals_q() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    two_atom_instance(vec![1.0, 2.0]).save(&path).unwrap();
    let out = run(&[
        "norms", "--input", path.to_str().unwrap(), "--norm", "morrey", "--p", "2", "--q", "2",
    ]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("p = q"), "missing diagnostic: {err}");
}

#[test]
fn norms_rejects_a_broken_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"dimension\": 1}").unwrap();
    let out = run(&["norms", "--input", path.to_str().unwrap(), "--norm", "morrey"]);
    assert_eq!(out.status.code(), Some(2));
}

fn verify_lemma2(baseline: &Path, report: Option<&Path>) -> Output {
    let mut args = vec![
        "verify".to_string(),
        "--suite".into(),
        "lemma2".into(),
        "--seed".into(),
        "5".into(),
        "--count".into(),
        "4".into(),
        "--baseline-path".into(),
        baseline.to_str().unwrap().into(),
    ];
    if let Some(r) = report {
        args.push("--output".into());
        args.push(r.to_str().unwrap().into());
    }
    let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
    run(&refs)
}

#[test]
fn verify_exit_codes_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let baseline = dir.path().join("baselines.json");

    // First run records baselines and passes.
    let first = verify_lemma2(&baseline, None);
    assert_eq!(first.status.code(), Some(0));
    assert!(baseline.exists());

    // Re-runs against the recorded store are deterministic.
    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    assert_eq!(verify_lemma2(&baseline, Some(&r1)).status.code(), Some(0));
    assert_eq!(verify_lemma2(&baseline, Some(&r2)).status.code(), Some(0));
    assert_eq!(std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());

    // A shrunken stored baseline turns the run into a failure (exit 1).
    let text = std::fs::read_to_string(&baseline).unwrap();
    let mut values: BTreeMap<String, f64> = serde_json::from_str(&text).unwrap();
    for v in values.values_mut() {
        *v /= 10.0;
    }
    std::fs::write(&baseline, serde_json::to_string(&values).unwrap()).unwrap();
    assert_eq!(verify_lemma2(&baseline, None).status.code(), Some(1));
}

#[test]
fn verify_rejects_unknown_suites() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify", "--suite", "nonsense", "--count", "1", "--baseline-path",
        dir.path().join("b.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
