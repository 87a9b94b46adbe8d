use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fdwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdwave")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit status")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn out_of_range_beta_is_a_config_error() {
    let out = fdwave(&["solve", "--beta", "2.5"]);
    assert_eq!(code(&out), 2);
    let msg = stderr(&out);
    assert!(msg.contains("beta") && msg.contains("(1, 2]"), "{msg}");
}

#[test]
fn clap_usage_errors_exit_with_two() {
    assert_eq!(code(&fdwave(&["solve", "--M", "many"])), 2);
    assert_eq!(code(&fdwave(&["solve", "--method", "lu"])), 2);
    assert_eq!(code(&fdwave(&["solve", "--source", "1.0"])), 2);
}

#[test]
fn spectrum_size_gate_exits_with_four() {
    let out = fdwave(&["spectrum", "--M", "5000", "--N", "4"]);
    assert_eq!(code(&out), 4, "{}", stderr(&out));
    assert!(stderr(&out).contains("4096"));
    let out = fdwave(&["solve", "--problem", "example2", "--M", "40", "--N", "2", "--method", "dense-direct"]);
    assert_eq!(code(&out), 4, "{}", stderr(&out));
}

#[test]
fn nonconvergence_exits_with_three() {
    let out = fdwave(&["solve", "--M", "64", "--N", "4", "--method", "cg", "--maxit", "2"]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("run.csv");
    let json_path = dir.path().join("other.json");
    let common = ["solve", "--M", "32", "--N", "16", "--J", "8", "--method", "pcg-strang"];
    let out = fdwave(&[&common[..], &["-o", path_str(&csv_path)]].concat());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = fdwave(&[&common[..], &["-o", path_str(&json_path)]].concat());
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let (header, rows) = read_csv(&csv_path);
    let sibling = read_json(&csv_path.with_extension("json"));
    let other = read_json(&json_path);
    assert_eq!(header, ["step", "time", "iterations", "step_time", "error"]);
    assert_eq!(sibling["columns"], other["columns"]);
    assert_eq!(rows.len(), 16);
    for (k, row) in rows.iter().enumerate() {
        for (col, cell) in header.iter().zip(row) {
            let full = sibling["rows"][k][col].as_f64().unwrap();
            let shown: f64 = cell.parse().unwrap();
            assert!((shown - full).abs() <= 5e-6 * full.abs(), "{col}: {cell} vs {full}");
            // Timings differ between runs; everything else is deterministic.
            if col != "step_time" {
                assert_eq!(sibling["rows"][k][col], other["rows"][k][col], "{col}");
            }
        }
    }
    assert_eq!(sibling["metadata"]["max_error"], other["metadata"]["max_error"]);
    assert_eq!(sibling["metadata"]["method"], "pcg-strang");
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "M = 16\nN = 8\nJ = 4\nbeta = 1.3\nmethod = \"cg\"\n").unwrap();
    let out_path = dir.path().join("out.json");
    let out = fdwave(&["solve", "--config", path_str(&cfg), "--M", "32", "-o", path_str(&out_path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let meta = &read_json(&out_path)["metadata"];
    assert_eq!(meta["M"], 32);
    assert_eq!(meta["N"], 8);
    assert_eq!(meta["beta"], 1.3);
    assert_eq!(meta["method"], "cg");

    std::fs::write(&cfg, "M = 16\nbta = 1.3\n").unwrap();
    let out = fdwave(&["solve", "--config", path_str(&cfg)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("bta"), "{}", stderr(&out));
}

#[test]
fn convergence_extras_come_from_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    std::fs::write(&cfg, "axis = \"time\"\nlevels = [4, 8]\nM = 16\nJ = 4\n").unwrap();
    let out_path = dir.path().join("conv.csv");
    let out = fdwave(&["convergence", "--config", path_str(&cfg), "-o", path_str(&out_path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = read_csv(&out_path);
    assert_eq!(header, ["N", "error", "rate"]);
    assert_eq!(rows.iter().map(|r| r[0].as_str()).collect::<Vec<_>>(), ["4", "8"]);
}

#[test]
fn single_level_convergence_has_no_rate() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("one.csv");
    let out = fdwave(&["convergence", "--M", "16", "--N", "16", "--J", "4", "--levels", "16", "-o", path_str(&out_path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = read_csv(&out_path);
    assert_eq!(header, ["M", "error", "rate"]);
    assert_eq!(rows.len(), 1);
    assert!(rows[0][1].parse::<f64>().unwrap() > 0.0);
    assert_eq!(rows[0][2], "");
    assert_eq!(read_json(&out_path.with_extension("json"))["rows"][0]["rate"], Value::Null);
}

#[test]
fn space_convergence_matches_reference_error() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("space.json");
    let args = ["convergence", "--beta", "1.5", "--N", "2000", "--J", "50", "--T", "1.5", "--levels", "32,64"];
    let out = fdwave(&[&args[..], &["--threads", "2", "-o", path_str(&out_path)]].concat());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows = &read_json(&out_path)["rows"];
    let e32 = rows[0]["error"].as_f64().unwrap();
    assert!((e32 - 6.585700e-5).abs() < 0.01 * 6.585700e-5, "{e32}");
    let rate = rows[1]["rate"].as_f64().unwrap();
    assert!((rate - 2.0).abs() < 0.05, "{rate}");
}

#[test]
fn spectrum_columns() {
    let dir = tempfile::tempdir().unwrap();
    let plain = dir.path().join("plain.csv");
    let out = fdwave(&["spectrum", "--M", "32", "--N", "32", "-o", path_str(&plain)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = read_csv(&plain);
    assert_eq!(header, ["original"]);
    assert_eq!(rows.len(), 31);

    let pre = dir.path().join("pre.csv");
    let out = fdwave(&[
        "spectrum", "--problem", "example2", "--M", "8", "--N", "8", "--precond", "truncated", "--l", "4", "-o",
        path_str(&pre),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = read_csv(&pre);
    assert_eq!(header, ["original", "preconditioned"]);
    assert_eq!(rows.len(), 49);
    let meta = &read_json(&pre.with_extension("json"))["metadata"];
    assert_eq!(meta["preconditioner"], "truncated(4)");
}

#[test]
fn bench_speedup_column() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("b.json");
    let out = fdwave(&["bench", "--M", "32", "--N", "8", "--J", "4", "--methods", "pcg-rchan", "-o", path_str(&p)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let cols = read_json(&p)["columns"].clone();
    assert_eq!(cols, serde_json::json!(["method", "cpu", "iter", "max_error"]));

    let out = fdwave(&["bench", "--M", "32", "--N", "8", "--J", "4", "--methods", "dense-direct", "-o", path_str(&p)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(read_json(&p)["rows"][0]["speedup"], 1.0);

    let out = fdwave(&[
        "bench", "--M", "32", "--N", "8", "--J", "4", "--repeat", "3", "--methods", "dense-direct,cg,gsf-pcg-strang", "-o",
        path_str(&p),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let j = read_json(&p);
    assert_eq!(j["rows"].as_array().unwrap().len(), 3);
    assert_eq!(j["metadata"]["repeat"], 3);
    let errors: Vec<f64> = j["rows"].as_array().unwrap().iter().map(|r| r["max_error"].as_f64().unwrap()).collect();
    assert!(errors.iter().all(|e| (e - errors[0]).abs() < 1e-9));
}

#[test]
fn custom_problem_solves_without_exact_solution() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.json");
    let out = fdwave(&[
        "solve", "--problem", "custom", "--dim", "2", "--M", "8", "--N", "4", "--length", "2", "--source", "1", "--beta",
        "2", "-o", path_str(&p),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let j = read_json(&p);
    assert_eq!(j["metadata"]["max_error"], Value::Null);
    assert!(!j["columns"].as_array().unwrap().contains(&Value::from("error")));
}
