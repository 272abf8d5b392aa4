use std::process::{Command, Output};

use serde_json::Value;

fn htlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_htlab"))
        .args(args)
        .env_remove("HTLAB_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn algebra_info_json() {
    let o = htlab(&["algebra", "info", "--ideal", "x^4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["dim"], 4);
    assert_eq!(v["hilbert_samuel"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(v["gorenstein"], true);
}

#[test]
fn algebra_info_with_explicit_variables() {
    let o = htlab(&["algebra", "info", "--vars", "x,y", "--ideal", "(xy, y^2 - x^3)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("dim: 5"), "{s}");
    assert!(s.contains("hilbert_samuel: [1, 2, 1, 1]"), "{s}");
}

#[test]
fn hypersurface_latex() {
    let o = htlab(&["hypersurface", "--family", "DegNm1", "--n", "4", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r"z_{0}^{2} z_{3} - z_{0} z_{1} z_{2} - \frac{1}{2} z_{0} z_{4}^{2} + \frac{1}{3} z_{1}^{3} = 0"
    );
}

#[test]
fn hypersurface_json_reports_point_test() {
    let o = htlab(&["hypersurface", "--ideal", "x^5", "--format", "json", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["degree"], 4);
    assert_eq!(v["essential_variables"], 5);
    assert_eq!(v["point_test"]["failures"], 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["hypersurface", "--family", "A5_9", "--n", "9", "--c", "2", "--format", "json"];
    assert_eq!(htlab(&args).stdout, htlab(&args).stdout);
}

#[test]
fn transitivity_reports_family_relation() {
    let o = htlab(&["transitivity", "--family", "A0_2", "--n", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["orbit_rank"], 6);
    assert_eq!(v["transitive"], true);
    assert_eq!(v["family_relations"].as_array().unwrap().len(), 1);
}

#[test]
fn transitivity_rejects_non_gorenstein_input() {
    let o = htlab(&["transitivity", "--ideal", "x^2, xy, y^2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn pencil_zero_loci() {
    for (id, dim) in [("B1_6", 1), ("B2_6", 2)] {
        let o = htlab(&["invariants", "pencil", "--family", id, "--n", "6", "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(v["zero_locus_dim"], dim);
    }
}

#[test]
fn catalog_verify_single_column() {
    let o = htlab(&["catalog", "verify", "--n", "6..6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("d=5: 1 (expected 1)  d=4: 3 (expected 3)  d=3: 3 (expected 3)"), "{s}");
}

#[test]
fn catalog_verify_json_lines() {
    let o = htlab(&["catalog", "verify", "--n", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let ids: Vec<&str> = lines
        .iter()
        .filter(|v| v["kind"] == "entry")
        .map(|v| v["report"]["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"C2_7") && ids.contains(&"A6_n"));
    let counts = lines.iter().find(|v| v["kind"] == "counts").unwrap();
    assert_eq!(counts["report"]["n"], 7);
}

#[test]
fn max_n_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_htlab"))
        .args(["catalog", "verify", "--id", "DegN", "--format", "json"])
        .env("HTLAB_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["algebra", "info", "--ideal", "x^"][..],
        &["algebra", "info", "--ideal", "x^3", "--family", "DegN", "--n", "2"],
        &["hypersurface", "--family", "Nope", "--n", "4"],
        &["hypersurface", "--family", "A0_2", "--n", "3"],
        &["hypersurface", "--family", "A5_9", "--n", "9"],
        &["catalog", "verify", "--n", "9..3"],
        &["algebra", "info", "--ideal", "x^3", "--format", "latex"],
    ] {
        let o = htlab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}
