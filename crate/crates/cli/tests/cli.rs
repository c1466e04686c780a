use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unruh-otto"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["sweep", "--out", "x.csv"]).status.code(), Some(1));
    assert_eq!(run(&["response", "--energy", "1"]).status.code(), Some(1));
    assert_eq!(
        run(&[
            "response",
            "--energy",
            "one",
            "--duration",
            "1",
            "--accel",
            "1"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn response_prints_closed_form() {
    let out = run(&[
        "response",
        "--energy",
        "1",
        "--duration",
        "1",
        "--accel",
        "1.7320508075688772",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "F = 0.0292468775639055");
    let out = run(&[
        "response",
        "--energy",
        "-1",
        "--duration",
        "1",
        "--accel",
        "1.7320508075688772",
        "--oracle",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("oracle = 0.15424"));
}

#[test]
fn domain_errors_exit_one() {
    let out = run(&[
        "response",
        "--energy",
        "1",
        "--duration",
        "-1",
        "--accel",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // hot bath slower than the cold one
    let out = run(&[
        "cycle", "--v", "0.9", "--a-hot", "5", "--a-cold", "15", "--e2", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = run(&["sweep", "--preset", "fig9", "--out", "never.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cycle_ledger_from_flags_and_config() {
    let out = run(&[
        "cycle", "--v", "0.999", "--a-hot", "100", "--a-cold", "15", "--e1", "1", "--e2", "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("efficiency = 0.500000000000000"));
    let work = text.lines().find(|l| l.starts_with("W_ext = ")).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cycle.cfg");
    fs::write(
        &cfg,
        "v = 0.999\na_hot = 100\na_cold = 15\ne1 = 1\ne2 = 2\n",
    )
    .unwrap();
    let out = run(&["cycle", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(work));
}

#[test]
fn sweep_from_config_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    let csv = dir.path().join("out.csv");
    fs::write(
        &cfg,
        "sweep = a_H\nmin = 20\nmax = 40\ncount = 3\nv = 0.999\ne2 = 1\np = 0\noutputs = delta_p_H\n",
    )
    .unwrap();
    let out = run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "a_H,delta_p_H");
    assert!(lines[1].starts_with("20.0000000000000,"));
    assert!(text.ends_with('\n'));
}

#[test]
fn bad_config_creates_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    let csv = dir.path().join("out.csv");
    fs::write(
        &cfg,
        "sweep = a_H\nmin = 40\nmax = 20\ncount = 3\nv = 0.999\ne2 = 1\noutputs = delta_p_H\n",
    )
    .unwrap();
    let out = run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!csv.exists());
}

#[test]
fn oracle_checked_preset() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig6.csv");
    let out = run(&[
        "sweep",
        "--preset",
        "fig6",
        "--oracle-check",
        "--jobs",
        "2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("largest oracle deviation"));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("a_H,delta_E,W_ext"));
    assert_eq!(text.lines().count(), 1 + 3 * 200);
}

#[test]
fn missing_config_file_exits_one() {
    let out = run(&[
        "sweep",
        "--config",
        "/nonexistent/sweep.cfg",
        "--out",
        "/tmp/never.csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
