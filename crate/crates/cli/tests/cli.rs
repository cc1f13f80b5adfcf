//! End-to-end tests of the binary: exit codes, witness output, artifact
//! determinism, and the error paths behind exit statuses 2 and 3.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn linset(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linset"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Three binary-atom terms whose language has exactly four vectors.
const EXAMPLE_EXPR: &str = "dim 3\nterms 3\n1,1,0|0,0,0\n1,0,0|1,0,0\n1,1,1|0,0,0\n";

#[test]
fn expression_self_containment_is_yes_with_exit_zero() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("e.expr"), EXAMPLE_EXPR).unwrap();
    let out = linset(dir.path(), &["decide", "expr", "e.expr", "e.expr"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "YES\n");
}

#[test]
fn onedim_poly_prints_the_smallest_witness() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("lhs.1d"), "c 4\np 3 5\n").unwrap();
    fs::write(dir.path().join("rhs.1d"), "c 0\np 3 5\n").unwrap();
    let out = linset(dir.path(), &["decide", "onedim-poly", "lhs.1d", "rhs.1d"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "NO\nwitness: 4\n");

    // The bounded oracle agrees, witness included.
    let out = linset(dir.path(), &["decide", "onedim-bounded", "lhs.1d", "rhs.1d"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "NO\nwitness: 4\n");
}

#[test]
fn encoding_flag_reports_instance_size_without_changing_the_verdict() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("lhs.1d"), "c 4\np 3 5\n").unwrap();
    fs::write(dir.path().join("rhs.1d"), "c 0\np 3 5\n").unwrap();
    let unary = linset(
        dir.path(),
        &["decide", "onedim-poly", "lhs.1d", "rhs.1d", "--encoding", "unary"],
    );
    assert_eq!(code(&unary), 1);
    assert_eq!(stdout(&unary), "instance size (unary): 21\nNO\nwitness: 4\n");
    let binary = linset(
        dir.path(),
        &["decide", "onedim-poly", "lhs.1d", "rhs.1d", "--encoding", "binary"],
    );
    assert_eq!(stdout(&binary), "instance size (binary): 14\nNO\nwitness: 4\n");
}

#[test]
fn multidim_bounded_prints_coefficients_and_point() {
    let dir = TempDir::new().unwrap();
    // L((0,0),{(1,0)}) has (1,0); the rhs only reaches multiples of (0,1).
    fs::write(
        dir.path().join("i.linset"),
        "dim 2\nc 0,0\np 1,0\n---\ndim 2\nc 0,0\np 0,1\n",
    )
    .unwrap();
    let out = linset(dir.path(), &["decide", "multidim-bounded", "i.linset", "--bound", "2"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.starts_with("NO\n"), "got: {text}");
    assert!(text.contains("witness coefficients: "), "got: {text}");
    assert!(text.contains("witness point: "), "got: {text}");
}

#[test]
fn malformed_input_exits_two_with_a_diagnostic() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.expr"), "garbage\n").unwrap();
    fs::write(dir.path().join("e.expr"), EXAMPLE_EXPR).unwrap();
    let out = linset(dir.path(), &["decide", "expr", "bad.expr", "e.expr"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("syntax error at line 1"), "got: {}", stderr(&out));
}

#[test]
fn missing_file_exits_two() {
    let dir = TempDir::new().unwrap();
    let out = linset(dir.path(), &["decide", "onedim-poly", "nope.1d", "nope.1d"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_subcommand_exits_two() {
    let dir = TempDir::new().unwrap();
    let out = linset(dir.path(), &["frobnicate"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn blown_enumeration_budget_exits_three() {
    let dir = TempDir::new().unwrap();
    // 31^5 coefficient vectors is past the enumeration budget.
    fs::write(
        dir.path().join("big.linset"),
        "dim 2\nc 0,0\np 1,0\np 0,1\np 1,1\np 2,1\np 1,2\n---\ndim 2\nc 0,0\np 1,0\np 0,1\n",
    )
    .unwrap();
    let out = linset(
        dir.path(),
        &["decide", "multidim-bounded", "big.linset", "--bound", "30"],
    );
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("budget"), "got: {}", stderr(&out));
}

#[test]
fn formula_encoding_matches_the_worked_two_block_conjunction() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("f.dnf"), "n 1\nm 1\nx1.1 x2.1\n").unwrap();
    let out = linset(dir.path(), &["reduce", "qbf2expr", "f.dnf", "--out-dir", "out"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let e1 = fs::read_to_string(dir.path().join("out/e1.expr")).unwrap();
    let e2 = fs::read_to_string(dir.path().join("out/e2.expr")).unwrap();
    assert_eq!(e1, "dim 1\nterms 2\n1|1\n0|1\n");
    assert_eq!(e2, "dim 1\nterms 2\n1|0\n1|0\n");
}

#[test]
fn chain_artifacts_are_deterministic_and_report_every_stage() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("f.dnf"), "n 1\nm 2\nx1.1\n!x1.1\n").unwrap();
    let first = linset(dir.path(), &["reduce", "chain", "f.dnf", "--out-dir", "a"]);
    assert_eq!(code(&first), 0, "stderr: {}", stderr(&first));
    let second = linset(dir.path(), &["reduce", "chain", "f.dnf", "--out-dir", "b"]);
    assert_eq!(code(&second), 0);

    for name in ["e1.expr", "e2.expr", "instance.linset", "lhs.1d", "rhs.1d", "report.txt"] {
        let a = fs::read(dir.path().join("a").join(name)).unwrap();
        let b = fs::read(dir.path().join("b").join(name)).unwrap();
        assert_eq!(a, b, "artifact {name} differs between identical runs");
    }

    let report = fs::read_to_string(dir.path().join("a/report.txt")).unwrap();
    for needle in ["stage 0", "stage 1", "stage 2", "stage 3", "max bit length"] {
        assert!(report.contains(needle), "report missing '{needle}':\n{report}");
    }
    // An always-falsifiable formula propagates NO through every decided stage.
    assert_eq!(report.matches(": NO").count(), 3, "report:\n{report}");
    assert!(report.contains("UNDECIDED-AT-DESK-SCALE"), "report:\n{report}");
}

#[test]
fn nonzero_target_constant_is_rejected_by_the_collapse() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("i.linset"),
        "dim 2\nc 0,0\np 1,1\n---\ndim 2\nc 1,0\np 1,1\ns 1\n",
    )
    .unwrap();
    let out = linset(dir.path(), &["reduce", "lin21d", "i.linset", "--out-dir", "o"]);
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).contains("zero constant"),
        "got: {}",
        stderr(&out)
    );
}

#[test]
fn generators_are_seed_deterministic_and_emit_valid_files() {
    let dir = TempDir::new().unwrap();
    for args in [
        vec!["gen", "dnf", "--n", "2", "--m", "3", "--seed", "42"],
        vec!["gen", "expr", "--dim", "2", "--terms", "3", "--seed", "9"],
        vec!["gen", "onedim", "--max-period", "30", "--k", "3", "--seed", "1"],
    ] {
        let mut first = args.clone();
        first.extend(["--out", "x1"]);
        let mut second = args.clone();
        second.extend(["--out", "x2"]);
        assert_eq!(code(&linset(dir.path(), &first)), 0);
        assert_eq!(code(&linset(dir.path(), &second)), 0);
        let a = fs::read(dir.path().join("x1")).unwrap();
        let b = fs::read(dir.path().join("x2")).unwrap();
        assert_eq!(a, b, "{args:?} not deterministic");
    }

    // The generated 1-D set parses and is contained in itself.
    let out = linset(dir.path(), &["decide", "onedim-poly", "x1", "x1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "YES\n");
}

#[test]
fn gen_rejects_impossible_parameters() {
    let dir = TempDir::new().unwrap();
    let out = linset(
        dir.path(),
        &["gen", "onedim", "--max-period", "2", "--k", "5", "--seed", "1"],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_runs_the_named_suite_and_exits_zero_on_pass() {
    let dir = TempDir::new().unwrap();
    let out = linset(dir.path(), &["verify", "onedim-oracle", "--count", "25", "--seed", "3"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("onedim-oracle: 25/25 pass"), "got: {}", stdout(&out));

    let out = linset(dir.path(), &["verify", "aggregation", "--count", "20", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("aggregation-pairs: 20/20 pass"), "got: {text}");
    assert!(text.contains("aggregation-triples: 10/10 pass"), "got: {text}");
}

#[test]
fn verify_rejects_exhaustive_on_random_only_suites() {
    let dir = TempDir::new().unwrap();
    let out = linset(dir.path(), &["verify", "qbf-expr", "--count", "exhaustive"]);
    assert_eq!(code(&out), 2);
    let out = linset(dir.path(), &["verify", "qbf-expr", "--count", "0"]);
    assert_eq!(code(&out), 2);
}
