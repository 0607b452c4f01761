//! End-to-end runs of the `qhodge` binary.

use qhodge::calculus::{Braiding, Direction};
use qhodge::cli::MatrixExport;
use std::process::{Command, Output};

fn qhodge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhodge")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn verify_is_deterministic_and_passes() {
    let args = ["verify", "--suites", "braiding,exterior,metric"];
    let a = qhodge(&args);
    let b = qhodge(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["total"], v["passed"]);
    let suites: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(suites, ["braiding", "exterior", "metric"]);
}

#[test]
fn corrupted_braiding_exits_one() {
    let o = qhodge(&["verify", "--suites", "braiding", "--corrupt-sigma", "2,8,2"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["all_pass"], false);
    let failing: Vec<&str> = v["suites"][0]["identities"].as_array().unwrap().iter().filter(|i| i["holds"] == false).map(|i| i["name"].as_str().unwrap()).collect();
    assert!(failing.contains(&"braid_relation_plus"));
    assert!(!failing.contains(&"braid_relation_minus"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["--q", "3/2", "spectra", "--k", "2"][..],
        &["--q", "0", "spectra", "--k", "2"],
        &["spectra", "--k", "9"],
        &["verify", "--suites", "everything"],
        &["laplacian", "--jmax", "5/4"],
        &["classify", "--input", "/nonexistent/contraction.json"],
        &["no-such-command"],
    ] {
        assert_eq!(qhodge(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn spectra_with_evaluation() {
    let o = qhodge(&["spectra", "--k", "3", "--sign", "-", "--q", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["rank"], 4);
    let nonzero: Vec<_> = v["eigenvalues"].as_array().unwrap().iter().filter(|e| e["eigenvalue"] != "0").collect();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(nonzero[0]["multiplicity"], 4);
    // 2(1 + 1/4 + 4)
    assert_eq!(nonzero[0]["at_q"]["value"], "21/2");
}

#[test]
fn laplacian_example_and_csv() {
    let o = qhodge(&["laplacian", "--branch", "sigma", "--q", "1/2", "--alpha", "1", "--nmax", "0", "--jmax", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,j,eigenvalue,value,decimal,oracle_agrees"));
    assert!(text.lines().any(|l| l.starts_with("0,1,") && l.contains(",5/2,2.5,")), "{text}");
}

#[test]
fn laplacian_oracle_column() {
    let o = qhodge(&["laplacian", "--branch", "other", "--side", "R", "--alpha", "-2", "--nmax", "1", "--jmax", "3/2", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let entries = v["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    assert!(entries.iter().all(|e| e["oracle_agrees"] == true));
}

#[test]
fn classify_family_a_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("g.json");
    std::fs::write(&input, r#"{"alpha": "3", "beta": "3*q^2", "nu": 0, "epsilon": "-3*(q^2-1)", "xi": "-3*(q^2-1)", "gamma": "3*(q^2+1)"}"#).unwrap();
    let o = qhodge(&["classify", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["family"], "a");
    assert_eq!(v["sign"], -1);
    assert_eq!(v["maximally_hermitian"]["t_minus"], true);
    assert_eq!(v["duality"]["all_hold"], true);
}

#[test]
fn classify_metric_branches() {
    let dir = tempfile::tempdir().unwrap();
    for (branch, class) in [(1, "in G_sigma"), (-1, "in G minus G_sigma")] {
        let exported = qhodge(&["export", "--what", "metric", "--a", "2", "--branch", &branch.to_string()]);
        let m: MatrixExport = serde_json::from_slice(&exported.stdout).unwrap();
        let dense = m.to_dense().unwrap();
        let g: Vec<Vec<String>> = dense.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let input = dir.path().join(format!("g{branch}.json"));
        std::fs::write(&input, serde_json::json!({ "g": g }).to_string()).unwrap();
        let v = json(&qhodge(&["classify-metric", "--input", input.to_str().unwrap()]));
        assert_eq!(v["class"], class);
        assert_eq!(v["family_a"]["branch"], branch);
    }
}

#[test]
fn export_to_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (sign, d) in [("+", Direction::Plus), ("-", Direction::Minus)] {
        let path = dir.path().join(format!("sigma{}.json", if d == Direction::Plus { "p" } else { "m" }));
        let o = qhodge(&["export", "--what", "braiding", "--sign", sign, "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        let m: MatrixExport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!((m.rows, m.cols), (16, 16));
        assert_eq!(m.to_dense().unwrap(), Braiding::get(d).matrix().entries);
    }
}

#[test]
fn hodge_table_degree_one() {
    let o = qhodge(&["hodge-table", "--family", "a", "--alpha", "1", "--m", "auto", "--degree", "1", "--q", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let terms: Vec<&serde_json::Value> = rows.iter().flat_map(|r| r["image"].as_array().unwrap()).collect();
    assert_eq!(terms.len(), 5);
    assert!(terms.iter().all(|t| t["at_q"]["value"].is_string()));
    // w0 -> -i q^-1 chiz once m is normalized
    let w0 = rows.iter().find(|r| r["form"] == "w0").unwrap();
    assert_eq!(w0["image"][0]["form"], "chiz");
    assert_eq!(w0["image"][0]["at_q"]["value"], "-2*i");
}
