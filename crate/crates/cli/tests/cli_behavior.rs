//! End-to-end CLI behavior: schemas, file naming, formats, error exits
//! and output determinism.

use std::path::Path;
use std::process::Command;

fn fracspec(args: &[&str], dir: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fracspec"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawning fracspec")
}

#[test]
fn solve_writes_pinned_schema_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracspec(
        &["solve", "--alpha", "0.75", "--beta", "0.75", "--n", "24", "--out", "s.csv"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "index,re_lambda,im_lambda,residual,is_real,region,cone_margin"
    );
    assert_eq!(lines.count(), 23);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("s_report.json")).unwrap())
            .unwrap();
    assert_eq!(report["real_count"], 23);
    assert_eq!(report["principal_positive"], true);
}

#[test]
fn solve_count_truncates_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracspec(
        &["solve", "--alpha", "1", "--beta", "1", "--n", "16", "--count", "5", "--out", "s.csv"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert_eq!(text.lines().count(), 6); // header + 5
}

#[test]
fn sweep_smoke_grid_completes_with_nine_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracspec(
        &[
            "sweep",
            "--alpha-range",
            "0.55:0.95:3",
            "--beta-range",
            "0.55:0.95:3",
            "--n",
            "12",
            "--out",
            "grid.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("grid.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "alpha,beta,lambda1_re,lambda1_im,real_count,cone_margin,error"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.ends_with(',')), "expected empty error column");
}

#[test]
fn sweep_skips_infeasible_points_with_log_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracspec(
        &["sweep", "--alpha-range", "0.1:0.9:5", "--sum-fixed", "1.2", "--n", "12", "--out", "f.csv"],
        dir.path(),
    );
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    // alpha in {0.1, 0.3, 0.5, 0.7, 0.9}, beta = 1.2 - alpha: alpha = 0.1
    // gives beta = 1.1 > 1, infeasible
    assert!(stderr.contains("skipping infeasible"), "stderr: {stderr}");
    let text = std::fs::read_to_string(dir.path().join("f.csv")).unwrap();
    assert_eq!(text.lines().count(), 5); // header + 4 feasible
}

#[test]
fn eigenfunction_writes_one_file_per_index() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracspec(
        &[
            "eigenfunction",
            "--alpha",
            "1",
            "--beta",
            "1",
            "--n",
            "20",
            "--indices",
            "1,3",
            "--out",
            "ef.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for j in [1usize, 3] {
        let text = std::fs::read_to_string(dir.path().join(format!("ef_j{j}.csv"))).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "x,re_u,im_u,abs_u");
        assert_eq!(lines.count(), 21); // N + 1 nodes
    }
    // j = 1 trace correlates with sqrt(2) sin(pi x)
    let text = std::fs::read_to_string(dir.path().join("ef_j1.csv")).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').take(2).map(|t| t.parse().unwrap()).collect())
        .collect();
    let (mut dot, mut nu, mut ns) = (0.0f64, 0.0f64, 0.0f64);
    for r in &rows {
        let s = (std::f64::consts::PI * r[0]).sin();
        dot += r[1] * s;
        nu += r[1] * r[1];
        ns += s * s;
    }
    let corr = dot.abs() / (nu.sqrt() * ns.sqrt());
    assert!(corr >= 0.999, "correlation with sin(pi x) only {corr}");
}

#[test]
fn eigenfunction_reality_split_in_strongly_nonsymmetric_case() {
    // at (0.2, 0.9) the first eigenfunction is real, the second is not
    let dir = tempfile::tempdir().unwrap();
    let out = fracspec(
        &[
            "eigenfunction",
            "--alpha",
            "0.2",
            "--beta",
            "0.9",
            "--n",
            "100",
            "--indices",
            "1,2",
            "--out",
            "ef.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let max_im = |name: &str| -> f64 {
        std::fs::read_to_string(dir.path().join(name))
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap().abs())
            .fold(0.0, f64::max)
    };
    assert!(max_im("ef_j1.csv") <= 1e-6);
    assert!(max_im("ef_j2.csv") > 1e-3);
}

#[test]
fn eigenfunction_index_out_of_range_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracspec(
        &["eigenfunction", "--alpha", "1", "--beta", "1", "--n", "8", "--indices", "99", "--out", "e.csv"],
        dir.path(),
    );
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
}

#[test]
fn invalid_orders_exit_nonzero_with_message() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracspec(
        &["solve", "--alpha", "0.2", "--beta", "0.3", "--n", "8", "--out", "x.csv"],
        dir.path(),
    );
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid orders"));
}

#[test]
fn json_format_emits_parseable_arrays() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracspec(
        &["solve", "--alpha", "0.6", "--beta", "0.9", "--n", "12", "--format", "json", "--out", "s.json"],
        dir.path(),
    );
    assert!(out.status.success());
    let rows: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 11);
    assert!(rows[0]["re_lambda"].is_f64());
    assert_eq!(rows[0]["region"], "accurate");
}

#[test]
fn identical_runs_give_byte_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        let out = fracspec(
            &["solve", "--alpha", "0.2", "--beta", "0.9", "--n", "40", "--seed", "7", "--out", name],
            dir.path(),
        );
        assert!(out.status.success());
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
    let ra = std::fs::read(dir.path().join("a_report.json")).unwrap();
    let rb = std::fs::read(dir.path().join("b_report.json")).unwrap();
    assert_eq!(ra, rb);
}

#[test]
fn thread_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_fracspec"))
        .args(["solve", "--alpha", "0.6", "--beta", "0.9", "--n", "30", "--out", "t.csv"])
        .env("FRACSPEC_THREADS", "1")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    // single-threaded output matches the default-parallel output
    let out2 = fracspec(
        &["solve", "--alpha", "0.6", "--beta", "0.9", "--n", "30", "--out", "t2.csv"],
        dir.path(),
    );
    assert!(out2.status.success());
    let a = std::fs::read(dir.path().join("t.csv")).unwrap();
    let b = std::fs::read(dir.path().join("t2.csv")).unwrap();
    assert_eq!(a, b);
}
