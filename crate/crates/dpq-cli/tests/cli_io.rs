//! End-to-end checks of the `dpq` binary: exit codes, output framing,
//! determinism, and the config-file layering.

use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_dpq"))
        .args(args)
        .output()
        .expect("failed to launch dpq");
    (
        output.status.code().expect("dpq was killed by a signal"),
        String::from_utf8(output.stdout).expect("stdout is not UTF-8"),
        String::from_utf8(output.stderr).expect("stderr is not UTF-8"),
    )
}

/// Unique per-test scratch path so parallel tests never collide.
fn temp_path(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("dpq_cli_io_{}_{tag}", std::process::id()))
}

#[test]
fn simulate_is_deterministic_and_parallel_invariant() {
    let base = [
        "simulate", "--t", "0,0,0", "--sizes", "500", "--trials", "8", "--seed", "7",
    ];
    let (code, first, _) = run(&base);
    assert_eq!(code, 0);
    assert!(!first.contains('\r'), "output must be LF-only");
    assert!(first.ends_with('\n'), "output must end with a newline");
    assert!(first.starts_with("n,"), "missing CSV header: {first}");

    let (_, second, _) = run(&base);
    assert_eq!(first, second, "same seed must reproduce bytes exactly");

    for workers in ["1", "4"] {
        let mut args = base.to_vec();
        args.extend_from_slice(&["--parallel", workers]);
        let (code, parallel, _) = run(&args);
        assert_eq!(code, 0);
        assert_eq!(
            first, parallel,
            "worker count must not change the output (--parallel {workers})"
        );
    }
}

#[test]
fn out_flag_writes_the_exact_stdout_bytes() {
    let path = temp_path("table.csv");
    let (code, stdout, _) = run(&["table", "--k", "5"]);
    assert_eq!(code, 0);

    let path_str = path.to_str().unwrap();
    let (code, quiet, _) = run(&["table", "--k", "5", "--out", path_str]);
    assert_eq!(code, 0);
    assert!(quiet.is_empty(), "--out must silence stdout, got: {quiet}");

    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(stdout, written, "--out file must match stdout bytes");
    std::fs::remove_file(&path).ok();
}

#[test]
fn malformed_arguments_exit_two() {
    let cases: &[&[&str]] = &[
        &["analyze", "--t", "1,2"],
        &["analyze", "--t", "a,b,c"],
        &["analyze", "--t", "1,1,1", "--cutoff", "3"],
        &["analyze", "--t", "1,1,1", "--k", "6"],
        &["recurrence", "--sizes", "5000"],
        &["simulate", "--sizes", "0"],
        &["simulate", "--trials", "0"],
    ];
    for args in cases {
        let (code, _, stderr) = run(args);
        assert_eq!(code, 2, "expected exit 2 for {args:?}, stderr: {stderr}");
        assert!(!stderr.is_empty(), "expected a diagnostic for {args:?}");
    }
}

#[test]
fn unknown_config_key_exits_two() {
    let path = temp_path("bad.conf");
    std::fs::write(&path, "t = 1,1,1\npivots = 9\n").unwrap();
    let (code, _, stderr) = run(&["analyze", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(
        stderr.contains("unknown key") && stderr.contains("line 2"),
        "diagnostic must name the offending line: {stderr}"
    );
    std::fs::remove_file(&path).ok();
}

#[test]
fn config_file_applies_and_flags_override_it() {
    let path = temp_path("layered.conf");
    std::fs::write(&path, "# shared defaults\nt = 1,1,1\nseed = 9\n").unwrap();
    let path_str = path.to_str().unwrap();

    let (code, from_file, _) = run(&["analyze", "--config", path_str]);
    assert_eq!(code, 0);
    assert!(
        from_file.contains("t = (1, 1, 1)"),
        "config t must apply: {from_file}"
    );

    let (code, from_flag, _) = run(&["analyze", "--config", path_str, "--t", "0,0,0"]);
    assert_eq!(code, 0);
    assert!(
        from_flag.contains("t = (0, 0, 0)"),
        "command-line t must win over the config file: {from_flag}"
    );
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_reports_pass_and_corruption_fails() {
    let (code, stdout, _) = run(&["verify", "--suite", "toll-identity"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("[PASS] toll-identity"), "got: {stdout}");
    assert!(
        stdout.contains("summary: 1 suites run, 1 passed"),
        "got: {stdout}"
    );

    let (code, stdout, _) = run(&["verify", "--suite", "toll-identity", "--corrupt-tolls"]);
    assert_eq!(code, 1, "a corrupted toll table must fail verification");
    assert!(stdout.contains("[FAIL] toll-identity"), "got: {stdout}");
}

#[test]
fn verify_rejects_unmatched_suite_filter() {
    let (code, _, stderr) = run(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(code, 2);
    assert!(!stderr.is_empty());
}

#[test]
fn recurrence_emits_exact_values_for_every_size() {
    let (code, stdout, _) = run(&[
        "recurrence",
        "--t",
        "0,0,0",
        "--cutoff",
        "1",
        "--sizes",
        "6",
        "--measure",
        "comparisons",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "n,comparisons_expected");
    assert_eq!(lines.len(), 8, "header plus one row per size 0..=6");
    for (n, line) in lines[1..].iter().enumerate() {
        let (row_n, value) = line.split_once(',').unwrap();
        assert_eq!(row_n.parse::<usize>().unwrap(), n);
        assert!(value.contains('/'), "values must stay rational: {line}");
    }
    assert_eq!(lines[1], "0,0/1");
    assert_eq!(lines[2], "1,0/1");
    assert_eq!(lines[6], "5,31/5");
}

#[test]
fn table_lists_every_vector_for_the_sample_size() {
    let (code, stdout, _) = run(&["table", "--k", "5"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 11, "header plus ten vectors at k = 5");
    assert!(
        lines[0].starts_with("t1,t2,t3,entropy,"),
        "got: {}",
        lines[0]
    );
    let symmetric = lines
        .iter()
        .find(|line| line.starts_with("1,1,1,"))
        .expect("symmetric vector row missing");
    assert!(symmetric.contains("1.70426"), "got: {symmetric}");
}

#[test]
fn analyze_prints_exact_and_decimal_forms() {
    let (code, stdout, _) = run(&["analyze", "--t", "0,0,0"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("19/10"), "got: {stdout}");
    assert!(stdout.contains("1.90000"), "got: {stdout}");
    assert!(stdout.contains("cutoff M = 1"), "got: {stdout}");
}

#[test]
fn contour_renders_a_heat_map() {
    let svg_path = temp_path("contour.svg");
    let svg_str = svg_path.to_str().unwrap();
    let (code, stdout, _) = run(&[
        "contour",
        "--grid-step",
        "0.25",
        "--measure",
        "comparisons",
        "--svg",
        svg_str,
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("tau1,tau2,"), "got: {stdout}");

    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"), "not an SVG document: {svg}");
    assert!(svg.trim_end().ends_with("</svg>"));
    std::fs::remove_file(&svg_path).ok();
}
