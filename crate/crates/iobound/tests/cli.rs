//! End-to-end tests of the `iobound` binary: exit codes, stream plumbing,
//! format round trips, and determinism of CSV output, all through real
//! child processes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn iobound(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_iobound"));
    cmd.args(args);
    cmd
}

fn run(args: &[&str]) -> Output {
    iobound(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

// ── exit codes ──

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bound", "--nonsense"][..],
        &["gen", "--family", "dodecahedron", "--l", "3"][..],
        &["sweep", "--family", "hypercube", "--l", "6:3", "--memory", "1"][..],
        &["closed-form", "--family", "strassen", "--l", "3", "--memory", "1"][..],
        &["verify", "no-such-suite"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}: {}", stderr_of(&out));
    }
}

#[test]
fn validation_errors_exit_3() {
    // Bad parameter values and malformed graph files are input errors, not
    // usage errors.
    let gen_no_prob = run(&["gen", "--family", "erdos_renyi", "--n", "32"]);
    assert_eq!(gen_no_prob.status.code(), Some(3), "{}", stderr_of(&gen_no_prob));
    assert!(stderr_of(&gen_no_prob).contains("error:"));

    let mut child = iobound(&["bound", "--memory", "4"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawns");
    child
        .stdin
        .take()
        .expect("piped")
        .write_all(b"n 2\n0 1\n1 0\n") // a 2-cycle: structurally valid, not a DAG
        .expect("writes");
    let out = child.wait_with_output().expect("runs");
    assert_eq!(out.status.code(), Some(3), "{}", stderr_of(&out));
    assert!(stderr_of(&out).contains("cycle"), "stderr: {}", stderr_of(&out));
}

#[test]
fn invalid_dense_threshold_env_exits_3() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("q3.json");
    let gen = run(&["gen", "--family", "hypercube", "--l", "3", "--out", path.to_str().unwrap()]);
    assert!(gen.status.success());
    let out = iobound(&["spectrum", path.to_str().unwrap()])
        .env("IOBOUND_DENSE_THRESHOLD", "not-a-number")
        .output()
        .expect("runs");
    assert_eq!(out.status.code(), Some(3), "{}", stderr_of(&out));
}

// ── gen → bound pipeline ──

#[test]
fn gen_bound_pipeline_reproduces_known_value() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("q3.json");
    let gen = run(&["gen", "--family", "hypercube", "--l", "3", "--out", path.to_str().unwrap()]);
    assert!(gen.status.success(), "{}", stderr_of(&gen));

    let out = run(&["bound", path.to_str().unwrap(), "--memory", "1", "--method", "loose"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    // Loose bound on the 3-cube at M=1, k=2: (1/3)·⌊8/2⌋·(0+2) − 4 = −4/3.
    assert!(text.contains("\n  2 -1.33333333e0\n"), "per-k table:\n{text}");
    assert!(text.contains("best_k: 2"), "{text}");
    assert!(text.contains("raw_bound: -1.33333333e0"), "{text}");
    assert!(text.contains("effective_bound: 0.00000000e0"), "{text}");
    // M=1 sits below the max in-degree of 3: the report must say so loudly.
    assert!(stderr_of(&out).contains("max in-degree 3"), "stderr: {}", stderr_of(&out));
}

#[test]
fn bound_reads_stdin_and_emits_json() {
    let gen = run(&["gen", "--family", "hypercube", "--l", "4"]);
    assert!(gen.status.success());

    let mut child = iobound(&["bound", "--memory", "2", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawns");
    child.stdin.take().expect("piped").write_all(&gen.stdout).expect("writes");
    let out = child.wait_with_output().expect("runs");
    assert!(out.status.success(), "{}", stderr_of(&out));

    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(report["n"], 16);
    assert_eq!(report["method"], "tight");
    assert_eq!(report["memory"], 2);
    assert!(report["best_k"].as_u64().expect("integer") >= 2);
    assert_eq!(report["per_k"].as_array().expect("array").len(), 15, "k spans 2..=16");
    let raw = report["raw_bound"].as_f64().expect("number");
    let effective = report["effective_bound"].as_f64().expect("number");
    assert_eq!(effective, raw.max(0.0));
}

// ── formats and spectrum ──

#[test]
fn edge_list_format_round_trips_through_spectrum() {
    let dir = tempfile::tempdir().expect("tempdir");
    let json = dir.path().join("b2.json");
    let edges = dir.path().join("b2.edges");
    for (path, format) in [(&json, "json"), (&edges, "edge-list")] {
        let out = run(&[
            "gen", "--family", "butterfly", "--l", "2",
            "--format", format, "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr_of(&out));
    }
    let from_json = run(&["spectrum", json.to_str().unwrap(), "--eigs", "12"]);
    let from_edges = run(&["spectrum", edges.to_str().unwrap(), "--eigs", "12"]);
    assert!(from_json.status.success() && from_edges.status.success());
    assert_eq!(stdout_of(&from_json), stdout_of(&from_edges), "formats must agree");

    let text = stdout_of(&from_json);
    let mut lines = text.lines();
    let header = lines.next().expect("header");
    assert!(header.starts_with("# n=12 variant=tilde"), "header: {header}");
    assert_eq!(lines.next(), Some("0.00000000e0"), "connected graph kernel");
    let values: Vec<f64> =
        lines.map(|s| s.parse().expect("parseable eigenvalue")).collect();
    assert_eq!(values.len(), 11);
    assert!(values.windows(2).all(|w| w[0] <= w[1]), "ascending order");
}

#[test]
fn closed_form_prints_known_values() {
    let out = run(&[
        "closed-form", "--family", "hypercube", "--l", "10", "--memory", "8", "--alpha", "1",
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert!(stdout_of(&out).contains("bound: 1.01818182e1"), "{}", stdout_of(&out));

    // Without --alpha the command scans for the best cutoff and reports it.
    let best = run(&["closed-form", "--family", "butterfly", "--l", "8", "--memory", "2"]);
    assert!(best.status.success(), "{}", stderr_of(&best));
    let text = stdout_of(&best);
    assert!(text.contains("alpha: "), "{text}");
    assert!(text.contains("bound: "), "{text}");
}

// ── sweep ──

#[test]
fn sweep_csv_is_deterministic_and_well_shaped() {
    let args = [
        "sweep", "--family", "erdos_renyi", "--n", "32,48", "--memory", "1,2",
        "--method", "tight,loose", "--probability", "0.15", "--seed", "11",
    ];
    let first = run(&args);
    assert!(first.status.success(), "{}", stderr_of(&first));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "repeated sweeps must be byte-identical");

    let text = stdout_of(&first);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("family,param,n,M,p,method,best_k,raw_bound,effective_bound,h,wall_ms")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8, "2 sizes × 2 memories × 2 methods");
    assert!(rows.iter().all(|r| r.starts_with("erdos_renyi,")));
    assert!(rows.iter().all(|r| r.ends_with(",100,0")), "h column and zeroed wall_ms");
}

#[test]
fn pinned_sweep_matches_golden_file() {
    // Byte-stability across builds, not just across runs: the pinned
    // hypercube sweep must reproduce the checked-in CSV exactly.
    let out = run(&["sweep", "--family", "hypercube", "--l", "3:6", "--memory", "1"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let golden = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/golden/hypercube_l3_6_m1.csv"
    ))
    .expect("golden file present");
    assert_eq!(stdout_of(&out), golden, "pinned sweep drifted from the golden CSV");
}

#[test]
fn sweep_size_ranges_expand_inclusively() {
    let out = run(&["sweep", "--family", "hypercube", "--l", "3:6", "--memory", "4,8"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 9, "header + 4 sizes × 2 memories");
    for l in 3..=6 {
        assert!(
            text.contains(&format!("\nhypercube,{l},{},", 1usize << l)),
            "missing size {l}:\n{text}"
        );
    }
}

// ── verify ──

#[test]
fn verify_suite_passes_and_reports_checks() {
    let out = run(&["verify", "cut-identity"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("ok   cut-identity[hypercube(2)]"), "{text}");
    assert!(text.contains("suite cut-identity: 15/15 checks passed"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}
