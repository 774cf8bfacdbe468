use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qaffine")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_relations_default_config() {
    let o = run(&["verify-relations"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let lines = stdout_lines(&o);
    assert_eq!(lines.len(), 80 * 20);
    assert!(lines.iter().all(|l| l["pass"] == Value::Bool(true)));
}

#[test]
fn unreachable_tolerance_fails() {
    let o = run(&["verify-relations", "--points", "2", "--tol", "1e-30"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["verify-relations", "--points", "0"])), 64);
    assert_eq!(code(&run(&["verify-relations", "--nonsense"])), 64);
    assert_eq!(code(&run(&["verify-relations", "--q", "1+zi", "--g", "0.5"])), 64);
    assert_eq!(code(&run(&["verify-relations", "--q", "1.1+0.3i"])), 64);
    assert_eq!(code(&run(&["verify-relations", "--precision", "quad"])), 64);
    assert_eq!(code(&run(&["solve-r", "bad"])), 64);
    assert_eq!(code(&run(&["solve-r", "1+i", "2+i"])), 64);
    assert_eq!(code(&run(&["solve-r", "1+0.5i,1,medium", "2+i,1"])), 64);
    assert_eq!(code(&run(&["gln", "--n", "2"])), 64);
    assert_eq!(code(&run(&[])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn solve_r_generic_pair() {
    let o = run(&["solve-r"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let err = stderr(&o);
    let residual_rows = err.lines().filter(|l| l.starts_with("  ")).count();
    assert_eq!(residual_rows, 12, "{err}");
    let lines = stdout_lines(&o);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["nullspace_dim"], 1);
}

#[test]
fn solve_r_equal_points_is_permutation() {
    let o = run(&["solve-r", "--q", "1.1+0.3i", "--g", "0.7-0.2i", "1.2+0.3i,0.8-0.1i", "1.2+0.3i,0.8-0.1i"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("graded permutation"));
}

#[test]
fn solve_r_degenerate_point() {
    let o = run(&["solve-r", "--q", "1.1+0.3i", "--g", "0.7-0.2i", "0,1", "1+0.5i,1"]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
}

#[test]
fn solve_r_negative_specs_after_separator() {
    let o = run(&["solve-r", "--q", "1.1+0.3i", "--g", "0.7-0.2i", "--", "1.2+0.3i,0.8-0.1i", "-0.5+1.1i,1.3+0.2i,small"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn ybe_defaults() {
    let o = run(&["ybe"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("< 1e-9"), "{}", stderr(&o));
    assert_eq!(stdout_lines(&o).len(), 20);
}

#[test]
fn limit_conv_passes() {
    let o = run(&["limit-conv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn limit_yangian_rates_in_band() {
    let o = run(&["limit-yangian"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let lines = stdout_lines(&o);
    let rates: Vec<f64> = lines.iter().filter_map(|l| l.get("fitted_rate").and_then(Value::as_f64)).collect();
    assert_eq!(rates.len(), 4);
    assert!(rates.iter().all(|p| (0.7..=1.3).contains(p)), "{rates:?}");
}

#[test]
fn limit_yangian_full_table_reports_failures() {
    let o = run(&["limit-yangian", "--appendix"]);
    assert_eq!(code(&o), 1);
    let lines = stdout_lines(&o);
    let failing = lines.iter().filter(|l| l["pass"] == Value::Bool(false)).count();
    assert_eq!(failing, 16);
}

#[test]
fn gln_suites_pass() {
    for n in ["3", "4"] {
        let o = run(&["gln", "--n", n]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    assert!(stderr(&run(&["gln", "--n", "3"])).contains("coproduct cross terms: 1"));
}

#[test]
fn extended_precision_runs() {
    let o = run(&["verify-relations", "--points", "1", "--precision", "extended"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let worst = stdout_lines(&o).iter().map(|l| l["residual"].as_f64().unwrap()).fold(0.0, f64::max);
    assert!(worst < 1e-40, "{worst:e}");
}

fn read(p: &Path) -> Vec<u8> {
    std::fs::read(p).expect("report written")
}

#[test]
fn reports_reproduce_byte_identically() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    for d in [&d1, &d2] {
        let o = run(&["verify-relations", "--points", "3", "--seed", "11", "--out", d.path().to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert!(o.stdout.is_empty());
    }
    let a = read(&d1.path().join("verify_relations.jsonl"));
    assert_eq!(a, read(&d2.path().join("verify_relations.jsonl")));
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 240);
}

#[test]
fn config_file_with_flag_override() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("run.cfg");
    std::fs::write(&cfg, "# sample\nprecision = standard\nseed = 5\npoints = 4\nalpha = 1.1-0.2i\nabs_eps = 1e-10\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(stdout_lines(&run(&["verify-relations", "--config", c])).len(), 320);
    assert_eq!(stdout_lines(&run(&["verify-relations", "--config", c, "--points", "2"])).len(), 160);
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(code(&run(&["verify-relations", "--config", c])), 64);
    std::fs::write(&cfg, "points\n").unwrap();
    assert_eq!(code(&run(&["verify-relations", "--config", c])), 64);
}
