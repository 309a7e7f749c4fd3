//! End-to-end tests of the hurstlab binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hurstlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn hurstlab")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_series(path: &Path, values: impl Iterator<Item = f64>) {
    let mut text = String::from("value\n");
    for v in values {
        text.push_str(&format!("{v}\n"));
    }
    std::fs::write(path, text).unwrap();
}

#[test]
fn generate_is_deterministic_and_estimable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let res = run(&[
            "generate", "--model", "fbm", "--hurst", "0.7", "--n", "4096",
            "--seed", "42", "--out", out.to_str().unwrap(),
        ]);
        assert!(res.status.success(), "{}", stderr(&res));
    }
    let text_a = std::fs::read_to_string(&a).unwrap();
    let text_b = std::fs::read_to_string(&b).unwrap();
    assert_eq!(text_a, text_b);
    assert!(text_a.starts_with("value\n"));
    assert_eq!(text_a.lines().count(), 1 + 4096);

    let res = run(&["estimate", "--input", a.to_str().unwrap()]);
    assert!(res.status.success(), "{}", stderr(&res));
    let out = stdout(&res);
    let h: f64 = out
        .trim()
        .strip_prefix("H_est=")
        .expect("H_est= prefix")
        .parse()
        .unwrap();
    assert!((h - 0.7).abs() < 0.1, "H_est {h}");
}

#[test]
fn generate_prepend_zero_adds_origin() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.csv");
    let res = run(&[
        "generate", "--model", "fbm", "--hurst", "0.5", "--n", "64",
        "--seed", "1", "--prepend-zero", "--out", out.to_str().unwrap(),
    ]);
    assert!(res.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1 + 65);
    assert_eq!(text.lines().nth(1).unwrap(), "0");
}

#[test]
fn estimate_degenerate_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("flat.csv");
    write_series(&input, std::iter::repeat_n(3.5, 128));
    let res = run(&["estimate", "--input", input.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));
    assert!(stderr(&res).contains("degenerate"), "{}", stderr(&res));
}

#[test]
fn estimate_tdml_and_spectrum_flags() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.csv");
    let gen = run(&[
        "generate", "--model", "fbm", "--hurst", "0.3", "--n", "1024",
        "--seed", "9", "--out", input.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    for extra in [
        vec!["--method", "tdml"],
        vec!["--spectrum", "hurwitz"],
        vec!["--spectrum", "paxson", "--K", "4"],
        vec!["--method", "dfa"],
    ] {
        let mut args = vec!["estimate", "--input", input.to_str().unwrap()];
        args.extend(extra.iter());
        let res = run(&args);
        assert!(res.status.success(), "{extra:?}: {}", stderr(&res));
        assert!(stdout(&res).starts_with("H_est="), "{extra:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    let res = run(&["estimate"]); // missing --input
    assert_eq!(res.status.code(), Some(2));
    let res = run(&["frobnicate"]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn missing_input_file_exits_one() {
    let res = run(&["estimate", "--input", "/nonexistent/series.csv"]);
    assert_eq!(res.status.code(), Some(1));
    assert!(!stderr(&res).is_empty());
}

#[test]
fn bench_writes_three_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("results");
    let res = run(&[
        "bench", "--lengths", "128,256", "--samples", "6",
        "--methods", "whittle:paxson:10,variogram", "--workers", "2",
        "--seed", "7", "--out", out.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", stderr(&res));
    let global = std::fs::read_to_string(out.join("global.csv")).unwrap();
    assert!(global.starts_with("method,n,samples,rmse,failure_rate"));
    assert_eq!(global.lines().count(), 1 + 2 * 2);
    let local = std::fs::read_to_string(out.join("local.csv")).unwrap();
    assert_eq!(local.lines().count(), 1 + 2 * 2 * 1001);
    assert!(out.join("timings.csv").exists());
}

#[test]
fn sliding_reports_each_window() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.csv");
    let gen = run(&[
        "generate", "--model", "fbm", "--hurst", "0.6", "--n", "504",
        "--seed", "3", "--out", input.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let res = run(&[
        "sliding", "--window", "252", "--stride", "63",
        "--input", input.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", stderr(&res));
    let out = stdout(&res);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "start,h_est,error");
    assert_eq!(lines.len(), 1 + 5);
    for (i, line) in lines[1..].iter().enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], (i * 63).to_string());
        let h: f64 = fields[1].parse().unwrap();
        assert!(h > 0.0 && h < 1.0);
        assert!(fields[2].is_empty());
    }
}

#[test]
fn estimate_reads_headerless_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("raw.csv");
    let mut text = String::new();
    let mut acc = 0.0;
    let mut state = 1234567u64;
    for _ in 0..512 {
        // simple LCG noise; content only needs to be non-degenerate
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
        acc += (state >> 33) as f64 / 2f64.powi(31) - 1.0;
        text.push_str(&format!("{acc}\n"));
    }
    std::fs::write(&input, text).unwrap();
    let res = run(&["estimate", "--input", input.to_str().unwrap()]);
    assert!(res.status.success(), "{}", stderr(&res));
    assert!(stdout(&res).starts_with("H_est="));
}
