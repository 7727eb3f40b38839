mod common;

use common::{csv_rows, scratch_dir, stablepot, stdout};
use serde_json::Value;
use sha2::{Digest, Sha256};

fn eval(args: &[&str]) -> f64 {
    let o = stablepot(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).trim().parse().unwrap()
}

#[test]
fn martin_d_at_origin_is_one() {
    let v = eval(&["eval", "martin-D", "--d", "2", "--alpha", "1.5", "--x", "0,0", "--z", "1,0"]);
    assert!((v - 1.0).abs() < 1e-12, "{v}");
}

#[test]
fn martin_h_at_infinity() {
    let v = eval(&["eval", "martin-H", "--d", "2", "--alpha", "1.5", "--x", "0,2", "--z", "inf"]);
    assert!((v - 2f64.sqrt()).abs() < 1e-12, "{v}");
}

#[test]
fn green_h_symmetric_through_cli() {
    let a = eval(&["eval", "green-H", "--d", "2", "--alpha", "1.5", "--x", "0,1", "--y", "1,-1"]);
    let b = eval(&["eval", "green-H", "--d", "2", "--alpha", "1.5", "--x", "1,-1", "--y", "0,1"]);
    assert!(a > 0.0 && (a - b).abs() <= 1e-14 * a, "{a} {b}");
}

#[test]
fn eval_json_format() {
    let o = stablepot(&["eval", "phi", "--r", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let x = v["value"].as_f64().unwrap();
    assert!(x > 0.0 && x < 1.0);
}

#[test]
fn usage_and_domain_errors_exit_2() {
    assert_eq!(stablepot(&["eval", "no-such-kernel"]).status.code(), Some(2));
    assert_eq!(stablepot(&["eval", "phi", "--r", "2", "--alpha", "2.5"]).status.code(), Some(2));
    assert_eq!(stablepot(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(stablepot(&["report", "--curve", "no-such-curve"]).status.code(), Some(2));
    assert_eq!(stablepot(&["sample", "no-such-sampler"]).status.code(), Some(2));
    assert_eq!(stablepot(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn io_error_exits_3() {
    let o = stablepot(&["sample", "ball-exit", "--n", "10", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn identities_report_shape() {
    let o = stablepot(&["verify", "identities", "--d", "2", "--alpha", "1.5"]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = r["entries"].as_array().unwrap();
    let status = |id: &str| entries.iter().find(|e| e["check_id"] == id).map(|e| e["status"].as_str().unwrap().to_string());
    for id in ["sphere-exchange-symmetry", "halfspace-kernel-symmetry", "halfspace-normalization", "kelvin-green-relation"] {
        assert_eq!(status(id).as_deref(), Some("PASS"), "{id}");
    }
    let mut ids: Vec<&str> = entries.iter().map(|e| e["check_id"].as_str().unwrap()).collect();
    let n = ids.len();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), n, "check ids are unique");
    let fails = r["summary"]["fail"].as_u64().unwrap();
    assert_eq!(o.status.code(), Some(if fails == 0 { 0 } else { 1 }));
    for e in entries {
        assert!(!e["citation"].as_str().unwrap().is_empty());
    }
}

#[test]
fn hardy_report_flags_shifted_kelvin_divergence() {
    let o = stablepot(&["verify", "hardy"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let e = r["entries"].as_array().unwrap().iter().find(|e| e["check_id"] == "gallery-shifted-kelvin-on-sphere").unwrap();
    assert_eq!(e["status"], "DIVERGES_AS_EXPECTED");
}

#[test]
fn loose_tolerance_flag_scales_bounds() {
    let strict: Value = serde_json::from_str(&stdout(&stablepot(&["verify", "fatou"]))).unwrap();
    let loose: Value = serde_json::from_str(&stdout(&stablepot(&["verify", "fatou", "--tol", "10"]))).unwrap();
    let t = |r: &Value| r["entries"][0]["tolerance"].as_f64().unwrap();
    assert!((t(&loose) / t(&strict) - 10.0).abs() < 1e-12);
}

fn sha(path: &std::path::Path) -> Vec<u8> {
    Sha256::digest(std::fs::read(path).unwrap()).to_vec()
}

#[test]
fn halfplane_sampler_csv() {
    let dir = scratch_dir("halfplane");
    let (a, b) = (dir.join("a.csv"), dir.join("b.csv"));
    for f in [&a, &b] {
        let o = stablepot(&["sample", "halfplane-hit", "--d", "2", "--alpha", "1.5", "--x", "0,1", "--n", "100000", "--seed", "7", "--out", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("n=100000"));
    }
    assert_eq!(sha(&a), sha(&b));
    let (header, rows) = csv_rows(&std::fs::read_to_string(&a).unwrap());
    assert_eq!(header, ["y1", "y2", "t0"]);
    assert_eq!(rows.len(), 100_000);
    let y: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let n = y.len() as f64;
    let mean = y.iter().sum::<f64>() / n;
    let sd = (y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    assert!(mean.abs() <= 3.0 * sd / n.sqrt(), "mean {mean} sd {sd}");
    assert!(rows.iter().all(|r| r[1] == 0.0 && r[2] > 0.0));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn walk_on_balls_summary_near_phi_at_origin() {
    let dir = scratch_dir("walk");
    let f = dir.join("w.csv");
    let o = stablepot(&["sample", "walk-on-balls", "--x", "0,0", "--n", "10000", "--out", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("default seed 42"));
    let field = |k: &str| -> f64 {
        stdout(&o).split_whitespace().find_map(|w| w.strip_prefix(&format!("{k}="))).unwrap().parse().unwrap()
    };
    let exact = eval(&["eval", "phi", "--r", "0"]);
    assert!((field("estimate") - exact).abs() <= 3.0 * field("stderr") + field("bias_budget"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn phi_curve_report() {
    let o = stablepot(&["report", "--curve", "phi", "--d", "2", "--alpha", "1.5", "--r", "0.01:10:200"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("# curve=phi"));
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, ["r", "phi"]);
    assert_eq!(rows.len(), 200);
    assert!(rows.windows(2).all(|w| w[1][0] > w[0][0]));
    assert!(rows.iter().all(|r| (0.0..=1.0).contains(&r[1])));
    // the grid point nearest r = 1 carries the largest value
    let near = rows.iter().min_by(|a, b| (a[0] - 1.0).abs().total_cmp(&(b[0] - 1.0).abs())).unwrap();
    assert!(rows.iter().all(|r| r[1] <= near[1]));
    // and phi exceeds 0.99 once the grid resolves the boundary layer
    let (_, fine) = csv_rows(&stdout(&stablepot(&["report", "--curve", "phi", "--r", "0.9999:1.0001:3"])));
    assert!(fine[0][1] > 0.99, "{:?}", fine);
}

#[test]
fn fatou_decay_running_max_nonincreasing() {
    let (header, rows) = csv_rows(&stdout(&stablepot(&["report", "--curve", "fatou-decay", "--depth", "14"])));
    assert_eq!(header, ["level", "deviation", "running_max"]);
    assert_eq!(rows.len(), 14);
    assert!(rows.windows(2).all(|w| w[1][2] <= w[0][2]));
}

#[test]
fn thread_cap_does_not_change_output() {
    let run = |threads: &str| {
        std::process::Command::new(env!("CARGO_BIN_EXE_stablepot"))
            .args(["sample", "ball-exit", "--n", "20000", "--seed", "3"])
            .env("STABLEPOT_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}
