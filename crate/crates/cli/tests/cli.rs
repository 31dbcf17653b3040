use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn suc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suc")).args(args).output().expect("spawn suc")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_reports_block_and_monomial() {
    let out = suc(&["eval", "--scheme", "rosay", "--r", "0.4", "--theta", "0"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("n=2 "), "{text}");
    let line = text.lines().find(|l| l.starts_with("u1.value")).unwrap();
    let log_mag: f64 = line.split(['(', ',']).nth(1).unwrap().trim().parse().unwrap();
    assert!((log_mag - 0.64f64.ln()).abs() < 1e-12, "{line}");
}

#[test]
fn eval_rejects_outside_and_origin() {
    assert_eq!(code(&suc(&["eval", "--scheme", "rosay", "--r", "10"])), 2);
    let out = suc(&["eval", "--r", "0"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("origin excluded"));
}

#[test]
fn scan_row_count_and_determinism() {
    let args = ["scan", "--scheme", "rosay", "--n-min", "2", "--n-max", "10", "--angles", "8"];
    let a = suc(&args);
    assert_eq!(code(&a), 0);
    // 9 blocks x 3 radial positions x 8 angles, plus the header.
    assert_eq!(stdout(&a).lines().count(), 1 + 9 * 3 * 8);
    assert_eq!(a.stdout, suc(&args).stdout);
}

#[test]
fn loglog_scan_ratio_is_never_nan_or_plus_inf() {
    let out = suc(&["scan", "--scheme", "loglog", "--n-min", "4", "--n-max", "40", "--angles", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    let col = lines.next().unwrap().split(',').position(|c| c == "log_ratio").unwrap();
    for l in lines {
        let v: f64 = l.split(',').nth(col).unwrap().parse().unwrap();
        assert!(!v.is_nan() && v != f64::INFINITY, "{l}");
    }
}

#[test]
fn verify_rejects_unknown_suite_and_rosay_growth() {
    assert_eq!(code(&suc(&["verify", "--suite", "bogus"])), 2);
    assert_eq!(code(&suc(&["verify", "--scheme", "rosay", "--suite", "q22growth"])), 2);
}

#[test]
fn verify_selected_suites_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let p = path.to_str().unwrap();
        let out = suc(&[
            "verify", "--scheme", "rosay", "--suite", "ratio", "--suite", "smoothness", "--out", p,
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        fs::read(path).unwrap()
    };
    let a = run("a.json");
    assert_eq!(a, run("b.json"));
    let json: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let suites = json["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 2);
    assert_eq!(suites[0]["name"], "ratio");
    assert_eq!(suites[1]["name"], "smoothness");
}

fn write_scan(dir: &Path) -> String {
    let out = suc(&["scan", "--scheme", "loglog", "--n-min", "4", "--n-max", "20", "--angles", "4"]);
    let path = dir.join("scan.csv");
    fs::write(&path, out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn plot_renders_one_line_per_radius_with_finite_values() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write_scan(dir.path());
    let svg = dir.path().join("p.svg");
    let out = suc(&["plot", "--in", &csv, "--x", "n", "--y", "log_q22", "--logscale", "--out", svg.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert!(text.contains(r#"version="1.1""#));
    assert!(text.contains("log10 q22"));
    // The outer two radial positions sit on the collars, where q vanishes.
    assert_eq!(text.matches("<polyline").count(), 1);
    assert!(text.contains("radius_fraction = 0.5"));
    let svg = dir.path().join("n.svg");
    let out = suc(&["plot", "--in", &csv, "--x", "angle", "--y", "n", "--out", svg.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read_to_string(svg).unwrap().matches("<polyline").count(), 3);
}

#[test]
fn plot_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write_scan(dir.path());
    assert_eq!(code(&suc(&["plot", "--in", &csv, "--x", "n", "--y", "nope"])), 2);
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    assert_eq!(code(&suc(&["plot", "--in", empty.to_str().unwrap(), "--x", "n", "--y", "log_q22"])), 2);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let out = suc(&["scan", "--scheme", "rosay", "--n-max", "3", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(code(&out), 3);
}
