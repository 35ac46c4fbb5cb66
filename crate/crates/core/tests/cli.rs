use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_specineq"));
    c.env_remove("SPECINEQ_OUTPUT_DIR");
    c
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str], out: &Path) -> Output {
    bin().args(args).arg("--out").arg(out).output().unwrap()
}

fn csv_rows(path: &Path) -> Vec<csv::StringRecord> {
    csv::Reader::from_path(path).unwrap().records().map(|r| r.unwrap()).collect()
}

#[test]
fn quick_config_reports_universal_gap_bounds() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&["verify", configs().join("quick.json").to_str().unwrap()], tmp.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(tmp.path().join("inequalities.csv")).unwrap();
    let header = rdr.headers().unwrap().clone();
    assert_eq!(&header.iter().take(9).collect::<Vec<_>>(), &[
        "id", "domain", "m", "lhs", "rhs", "slack", "holds", "tolerance", "citation"
    ]);
    let rows = csv_rows(&tmp.path().join("inequalities.csv"));
    let ppw: Vec<_> = rows.iter().filter(|r| &r[0] == "ppw_gap").collect();
    assert_eq!(ppw.iter().map(|r| r[2].to_string()).collect::<Vec<_>>(), ["1", "2", "3"]);
    assert!(rows.iter().all(|r| &r[6] == "true" && !r[8].is_empty()));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["ok"], true);
    assert_eq!(summary["schema_version"], 1);
    assert_eq!(summary["chain_rows"], 3);
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = configs().join("quick.json");
    assert!(run(&["verify", cfg.to_str().unwrap()], a.path()).status.success());
    let out = bin().args(["verify", cfg.to_str().unwrap()]).env("SPECINEQ_OUTPUT_DIR", b.path()).output().unwrap();
    assert!(out.status.success());
    for f in ["spectra.csv", "inequalities.csv", "chain.csv", "summary.json"] {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        assert!(x == y, "{f} differs between runs");
    }
}

#[test]
fn bad_configs_exit_nonzero() {
    let tmp = tempfile::tempdir().unwrap();
    let empty = tmp.path().join("empty.json");
    std::fs::write(
        &empty,
        r#"{"schema_version": 1, "domains": [], "problems": ["dirichlet"], "mesh": {"h": 0.1, "levels": 2}, "m_max": 2}"#,
    )
    .unwrap();
    let out = run(&["verify", empty.to_str().unwrap()], tmp.path());
    assert_eq!(out.status.code(), Some(2));

    let broken = tmp.path().join("broken.json");
    std::fs::write(&broken, "{\n  \"schema_version\": 1,\n  \"domains\": [,]\n}").unwrap();
    let out = run(&["verify", broken.to_str().unwrap()], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = run(&["verify", tmp.path().join("missing.json").to_str().unwrap()], tmp.path());
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn disk_is_the_isoperimetric_equality_case() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("disk.json");
    std::fs::write(
        &cfg,
        r#"{
  "schema_version": 1,
  "domains": [{"label": "disk", "shape": "disk:1"}],
  "problems": ["dirichlet", "neumann", "clamped", "buckling"],
  "mesh": {"h": 0.0625, "levels": 2},
  "m_max": 4,
  "inequalities": ["faber_krahn", "szego_weinberger", "payne_buckling", "krahn_l2"]
}"#,
    )
    .unwrap();
    let out = run(&["verify", cfg.to_str().unwrap()], tmp.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&tmp.path().join("inequalities.csv"));
    let fk = rows.iter().find(|r| &r[0] == "faber_krahn").unwrap();
    let slack: f64 = fk[5].parse().unwrap();
    let tol: f64 = fk[7].parse().unwrap();
    let rhs: f64 = fk[4].parse().unwrap();
    assert!(slack.abs() <= tol && slack.abs() < 0.02 * rhs, "slack {slack}, tolerance {tol}");
    assert_eq!(rows.len(), 4);
}

#[test]
fn constants_and_curve_subcommands() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&["constants", "--n", "2..4"], tmp.path());
    assert!(out.status.success());
    let rows = csv_rows(&tmp.path().join("constants.csv"));
    assert_eq!(rows.len(), 3);
    let c2: f64 = rows[0][1].parse().unwrap();
    assert!((c2 - 0.7877).abs() < 5e-4);

    let out = run(&["curve", "--n", "4", "--points", "9"], tmp.path());
    assert!(out.status.success());
    let rows = csv_rows(&tmp.path().join("curve_n4.csv"));
    assert_eq!(rows.len(), 9);
    let ends: Vec<f64> = [0, 8].iter().map(|&i| rows[i][1].parse().unwrap()).collect();
    assert!(ends.iter().all(|r| (r - 1.0).abs() < 1e-6));

    assert_eq!(run(&["constants", "--n", "1..3"], tmp.path()).status.code(), Some(2));
    assert_eq!(run(&["curve", "--n", "4", "--points", "1"], tmp.path()).status.code(), Some(2));
}

#[test]
fn spectrum_subcommand() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&["spectrum", "--shape", "rectangle:1,1", "--problem", "dirichlet", "--h", "0.125", "--m", "3"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["spectrum", "--shape", "circle:1", "--problem", "dirichlet", "--h", "0.125"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
