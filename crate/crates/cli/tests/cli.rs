use std::path::Path;
use std::process::{Command, Output};

use adiashort::integrator::read_rows_csv;

fn adiashort(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adiashort"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Pulls `key = value` out of the simulate summary line.
fn summary_value(text: &str, key: &str) -> f64 {
    let rest = text.split(&format!("{key} = ")).nth(1).unwrap_or_else(|| panic!("{key} missing in {text:?}"));
    rest.split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn simulate_shortcut_summary() {
    let dir = tempfile::tempdir().unwrap();
    let o = adiashort(
        &["simulate", "--model", "lz", "--omega", "1", "--gamma", "shortcut", "--t0", "-15", "--t1", "15", "--init", "adiabatic"],
        dir.path(),
    );
    assert!(o.status.success());
    let s = stdout(&o);
    assert!((summary_value(&s, "P2") - 0.9988925785).abs() < 1e-8, "{s}");
    assert!((summary_value(&s, "norm") - 1.0).abs() < 1e-8, "{s}");

    let o = adiashort(
        &["simulate", "--model", "ae", "--alpha", "0.2", "--delta", "1", "--gamma", "shortcut", "--init", "adiabatic"],
        dir.path(),
    );
    assert!(o.status.success());
    assert!(summary_value(&stdout(&o), "P2") >= 0.999999);
}

#[test]
fn simulate_hermitian_lz() {
    let dir = tempfile::tempdir().unwrap();
    let o = adiashort(
        &["simulate", "--model", "lz", "--omega", "1", "--gamma", "off", "--t0", "-200", "--t1", "200", "--init", "bare1"],
        dir.path(),
    );
    assert!(o.status.success());
    let p1 = summary_value(&stdout(&o), "P1");
    assert!((p1 - 0.208).abs() < 3e-3, "{p1}");
}

#[test]
fn csv_output_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let o = adiashort(&["simulate", "--omega", "0.2", "--samples", "401", "--out", name], dir.path());
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(dir.path().join(name)).unwrap()
    };
    let a = run("a.csv");
    let b = run("b.csv");
    assert_eq!(a, b);
    assert!(!a.contains(&b'\r'));
    let rows = read_rows_csv(a.as_slice()).unwrap();
    assert_eq!(rows.len(), 401);
    let mut again = Vec::new();
    adiashort::integrator::write_rows_csv(&rows, &mut again).unwrap();
    assert_eq!(again, a);

    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("a.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["outputs"][0], "a.csv");
    assert!(manifest["stats"]["accepted"].as_u64().unwrap() > 0);
    assert!(manifest["wall_seconds"].as_f64().is_some());
}

#[test]
fn json_output_embeds_config() {
    let dir = tempfile::tempdir().unwrap();
    let o = adiashort(&["simulate", "--model", "ae", "--samples", "11", "--format", "json", "--out", "t.json"], dir.path());
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("t.json")).unwrap()).unwrap();
    assert_eq!(doc["config"]["model"]["kind"], "allen_eberly");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 11);
}

#[test]
fn validation_failures_exit_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["simulate", "--omega", "-1", "--out", "x.csv"],
        &["simulate", "--t0", "5", "--t1", "-5", "--out", "x.csv"],
        &["simulate", "--omega", "1,2", "--out", "x.csv"],
        &["simulate", "--samples", "1", "--out", "x.csv"],
        &["simulate", "--rel-tol", "0", "--out", "x.csv"],
        &["simulate", "--init", "custom:1,0", "--out", "x.csv"],
        &["simulate", "--model", "table:missing.csv", "--out", "x.csv"],
        &["simulate", "--gamma", "sideways", "--out", "x.csv"],
        &["scan", "--omega", "1,-2", "--out-dir", "scan"],
        &["energies", "--samples", "1", "--out", "x.csv"],
        &["profile", "--gamma", "off", "--out", "x.csv"],
        &["verify", "--only", "12"],
    ];
    for args in cases {
        let o = adiashort(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0, "validation left files behind");
}

#[test]
fn integrator_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("huge.csv"), "t,gamma\n-15,1e305\n0,1e305\n15,1e305\n").unwrap();
    let o = adiashort(&["simulate", "--gamma", "file:huge.csv", "--out", "x.csv"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(!dir.path().join("x.csv").exists());
}

fn read_summary(dir: &Path) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_path(dir.join("summary.csv")).unwrap();
    r.records().map(|x| x.unwrap()).collect()
}

#[test]
fn scan_lz_shortcut_and_hermitian() {
    let dir = tempfile::tempdir().unwrap();
    let o = adiashort(&["scan", "--model", "lz", "--omega", "0.2,1,2", "--out-dir", "on"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_summary(&dir.path().join("on"));
    assert_eq!(rows.len(), 3);
    for r in &rows {
        let p2: f64 = r[4].parse().unwrap();
        assert!(p2 >= 0.995);
        assert!(dir.path().join("on").join(&r[8]).exists());
    }

    let o = adiashort(
        &["scan", "--omega", "0.2,1,2", "--gamma", "off", "--init", "bare1", "--t0", "-200", "--t1", "200", "--out-dir", "off"],
        dir.path(),
    );
    assert!(o.status.success());
    let p2: Vec<f64> = read_summary(&dir.path().join("off")).iter().map(|r| r[4].parse().unwrap()).collect();
    for (got, want) in p2.iter().zip([0.061, 0.792, 0.998]) {
        assert!((got - want).abs() < 3e-3, "{got} vs {want}");
    }
}

#[test]
fn scan_ae_curves_are_indistinguishable() {
    let dir = tempfile::tempdir().unwrap();
    let o = adiashort(&["scan", "--model", "ae", "--alpha", "0.2,1,2", "--delta", "1", "--out-dir", "ae"], dir.path());
    assert!(o.status.success());
    let curves: Vec<Vec<f64>> = ["ae_alpha=0.2_delta=1.csv", "ae_alpha=1_delta=1.csv", "ae_alpha=2_delta=1.csv"]
        .iter()
        .map(|f| {
            let bytes = std::fs::read(dir.path().join("ae").join(f)).unwrap();
            read_rows_csv(bytes.as_slice()).unwrap().iter().map(|r| r.p2()).collect()
        })
        .collect();
    let mut worst = 0.0f64;
    for a in &curves {
        for b in &curves {
            worst = a.iter().zip(b).fold(worst, |m, (x, y)| m.max((x - y).abs()));
        }
    }
    assert!(worst <= 1e-3, "max pairwise P2 difference {worst:e}");
    let finals: Vec<f64> = curves.iter().map(|c| *c.last().unwrap()).collect();
    assert!(finals.iter().all(|&p| (p - 1.0).abs() < 1e-6));
}

#[test]
fn scan_respects_thread_variable() {
    let dir = tempfile::tempdir().unwrap();
    let bad = Command::new(env!("CARGO_BIN_EXE_adiashort"))
        .args(["scan", "--omega", "1,2", "--out-dir", "s"])
        .env("ADIASHORT_THREADS", "0")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_adiashort"))
        .args(["scan", "--omega", "1,2", "--out-dir", "s"])
        .env("ADIASHORT_THREADS", "1")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(ok.status.success());
}

#[test]
fn energies_report_separation() {
    let dir = tempfile::tempdir().unwrap();
    let sep = |args: &[&str]| {
        let o = adiashort(args, dir.path());
        assert!(o.status.success());
        summary_value(&stdout(&o), "separation_min")
    };
    assert_eq!(sep(&["energies", "--omega", "1", "--gamma", "off", "--out", "a.csv"]), 0.0);
    assert_eq!(sep(&["energies", "--omega", "1", "--gamma", "shortcut", "--out", "b.csv"]), 1.0);
    assert!(sep(&["energies", "--omega", "0.2", "--gamma", "shortcut", "--out", "c.csv"]) > 0.0);
    let text = std::fs::read_to_string(dir.path().join("b.csv")).unwrap();
    assert!(text.starts_with("t,re_e1,im_e1,re_e2,im_e2\n"));
}

#[test]
fn profile_peak() {
    let dir = tempfile::tempdir().unwrap();
    let o = adiashort(&["profile", "--omega", "0.2", "--out", "g.csv"], dir.path());
    assert!(o.status.success());
    assert_eq!(summary_value(&stdout(&o), "|gamma|"), 5.0);
}

#[test]
fn verify_subset_prints_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let o = adiashort(&["verify", "--fast", "--only", "1,9", "--json", "report.json"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("PASS 1 Decoupling"));
    assert!(s.contains("PASS 9 Gamma profile values"));
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report.as_array().unwrap().len(), 2);
}

#[test]
fn verify_exit_code_tracks_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let o = adiashort(&["verify", "--fast"], dir.path());
    let s = stdout(&o);
    let verdicts: Vec<&str> = s.lines().filter(|l| l.starts_with("PASS ") || l.starts_with("FAIL ")).collect();
    assert_eq!(verdicts.len(), 9);
    let all_pass = verdicts.iter().all(|l| l.starts_with("PASS"));
    assert_eq!(o.status.code(), Some(if all_pass { 0 } else { 1 }));
}
