use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use insitu::io::parse_matrix;
use insitu::{Binary, Matrix, Rationals};
use tempfile::TempDir;

const RATIONAL_3X3: &str = "rational\nn 3\n0 1 2\n3 4 5\n6 7 8\n";
const ZERO_PIVOT_3X3: &str = "rational\nn 3\n0 0 1\n1 1 1\n3 3 2\n";
const WORKED_GF2: &str = "gf2\nn 3\n0 1 1\n1 1 0\n1 0 1\n";
const NO_PREIMAGE: &str = "gf2\nn 2\n0 0\n1 0\n";
const SEED_10X10: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/orbit_seed_10x10.txt");

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_insitu")).args(args).output().unwrap()
}

fn run_with(args: &[&str], file: &Path) -> Output {
    let mut full: Vec<&str> = args.to_vec();
    full.push(file.to_str().unwrap());
    run(&full)
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_insitu"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn failure(out: &Output, code: i32) -> String {
    assert_eq!(out.status.code(), Some(code), "stdout: {}", String::from_utf8_lossy(&out.stdout));
    assert!(out.stdout.is_empty());
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn smatrix_prints_a_parseable_matrix() {
    let ws = Workspace::new();
    let text = stdout(&run_with(&["smatrix"], &ws.file("m.txt", RATIONAL_3X3)));
    assert_eq!(text, "rational\nn 3\n0 1 2\n0 7 11\n0 55 97\n");
    let m: Matrix<Rationals> = parse_matrix(&text).unwrap();
    assert_eq!(m, Matrix::from_i64(Rationals::new(), &[[0, 1, 2], [0, 7, 11], [0, 55, 97]]).unwrap());
}

#[test]
fn apply_both_modes() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", RATIONAL_3X3);
    let seq = run_with(&["apply", "--mode", "sequential", "--vector", "5,-2,3"], &m);
    assert_eq!(stdout(&seq), "4 19 181\n");
    let par = run_with(&["apply", "--mode", "parallel", "--vector", "1 1 1"], &m);
    assert_eq!(stdout(&par), "3 12 21\n");
}

#[test]
fn program_listing() {
    let out = run_stdin(&["program", "-"], "rational\nn 2\n1 -1\n1/2 0\n");
    assert_eq!(stdout(&out), "x1 := x1 - x2\nx2 := 1/2*x1\n");
}

#[test]
fn sequentialize_coding_decodes_to_the_program() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", ZERO_PIVOT_3X3);
    let full = stdout(&run_with(&["sequentialize"], &m));
    let (program, coding) = full.split_once("\n\n").unwrap();
    assert_eq!(program, "x1 := -x1 - x2\nx2 := -x1 + x3\nx3 := -3*x1 + 2*x3\nx1 := x1 + x2");
    assert!(coding.ends_with("fixups: 2 0 0\n"));

    let only = stdout(&run_with(&["sequentialize", "--coding-only"], &m));
    assert_eq!(only, coding);
    let decoded = stdout(&run_with(&["decode"], &ws.file("c.txt", &only)));
    assert_eq!(decoded, format!("{program}\n"));

    let perm = stdout(&run_with(&["sequentialize", "--method", "perm", "--coding-only"], &m));
    assert!(perm.contains("perm: "));
    let decoded = stdout(&run_with(&["decode"], &ws.file("p.txt", &perm)));
    assert_eq!(decoded.lines().count(), 3);
}

#[test]
fn preimage_none_and_found() {
    let ws = Workspace::new();
    assert_eq!(stdout(&run_with(&["preimage"], &ws.file("z.txt", NO_PREIMAGE))), "none\n");
    let found = stdout(&run_with(&["preimage"], &ws.file("t.txt", "gf2\nn 2\n1 1\n1 0\n")));
    let p: Matrix<Binary> = parse_matrix(&found).unwrap();
    assert_eq!(p.seq_matrix(), Matrix::from_i64(Binary::new(), &[[1, 1], [1, 0]]).unwrap());
}

#[test]
fn preimage_guard_is_overridable() {
    let ws = Workspace::new();
    let zero = "gfp 5\nn 3\n0 0 0\n0 0 0\n0 0 0\n";
    let big = ws.file("big.txt", zero);
    let err = failure(&run_with(&["preimage"], &big), 1);
    assert!(err.starts_with("error: search guard exceeded"), "{err}");
    // 5^9 candidates; the zero matrix is the first
    let ok = stdout(&run_with(&["preimage", "--max-candidates", "1953125"], &big));
    assert_eq!(ok, zero);
}

#[test]
fn regularize_trace_shows_intermediates() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", WORKED_GF2);
    let plain = stdout(&run_with(&["regularize"], &m));
    assert_eq!(plain, "gf2\nn 3\n1 1 1\n1 1 1\n0 1 1\n");
    let traced = stdout(&run_with(&["regularize", "--trace"], &m));
    assert_eq!(
        traced,
        "# step 1\ngf2\nn 3\n1 1 1\n1 0 1\n1 1 0\n\
         # step 2\ngf2\nn 3\n1 1 1\n1 1 1\n0 1 1\n\
         # result\ngf2\nn 3\n1 1 1\n1 1 1\n0 1 1\n"
    );
    // the last block re-parses on its own
    let last = traced.rsplit("# result\n").next().unwrap();
    assert!(parse_matrix::<Binary>(last).is_ok());
}

#[test]
fn regularize_with_units() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", "gfp 5\nn 3\n1 0 0\n0 1 0\n0 0 1\n");
    let out = stdout(&run_with(&["regularize", "--units", "2,3,4"], &m));
    assert_eq!(out, "gfp 5\nn 3\n2 0 0\n0 3 0\n0 0 4\n");
    let err = failure(&run_with(&["regularize", "--units", "1,0,1"], &m), 1);
    assert!(err.contains("unit 2 is zero"), "{err}");
}

#[test]
fn dynamics_commands() {
    assert_eq!(stdout(&run(&["orbit", SEED_10X10])), "cycle_length 13122\n");
    assert_eq!(stdout(&run(&["orbit", "--checked", SEED_10X10])), "cycle_length 13122\n");
    let err = failure(&run(&["orbit", "--max-iter", "100", SEED_10X10]), 1);
    assert!(err.contains("100 iterations"), "{err}");

    let census = stdout(&run(&["census", "--n", "4"]));
    assert_eq!(census.lines().last(), Some("max 18"));
    assert_eq!(census.lines().next(), Some("1 488"));
    assert_eq!(stdout(&run(&["census", "--n", "1"])), "1 1\nmax 1\n");
    let err = failure(&run(&["census", "--n", "6"]), 1);
    assert!(err.starts_with("error: search guard exceeded"), "{err}");

    let ws = Workspace::new();
    let dm = ws.file("dm.txt", "gf2\nn 3\n1 1 1\n1 1 1\n0 1 1\n");
    assert_eq!(stdout(&run_with(&["phi"], &dm)), "gf2\nn 3\n1 1 1\n1 1 0\n1 0 1\n");
    let t = stdout(&run_with(&["trajectory", "--steps", "2"], &dm));
    assert_eq!(t.matches("# step").count(), 3);
    let err = failure(&run_with(&["phi"], &ws.file("z.txt", NO_PREIMAGE)), 1);
    assert!(err.contains("not regular"), "{err}");
}

#[test]
fn equivalence() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", "rational\nn 4\n1 2 3 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n");
    let w = ws.file("w.txt", "rational\nn 4\n1 2 3 4\n1 0 0 0\n1 0 0 0\n1 0 0 0\n");
    let i = ws.file("i.txt", "rational\nn 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    let args = |a: &Path, b: &Path| run(&["equiv", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(stdout(&args(&m, &w)), "true\n");
    assert_eq!(stdout(&args(&m, &i)), "false\n");
    let g = ws.file("g.txt", WORKED_GF2);
    let err = failure(&args(&m, &g), 1);
    assert_eq!(err, "error: field mismatch: rational vs gf2\n");
}

#[test]
fn graph_commands() {
    let ws = Workspace::new();
    let chain = ws.file("chain.txt", "gf2\nn 3\n0 0 0\n1 0 0\n0 1 0\n");
    let path = chain.to_str().unwrap();
    let rewritten = stdout(&run(&["graph", "chain", "--p", "1", "--q", "3", "--i", "2", "--j", "1", path]));
    assert_eq!(rewritten, "gf2\nn 3\n0 0 0\n1 0 0\n1 0 0\n");
    let r = ws.file("r.txt", &rewritten);
    assert_eq!(stdout(&run(&["graph", "equiv", path, r.to_str().unwrap()])), "true\n");
    assert_eq!(stdout(&run(&["graph", "constructs", path])), "gf2\nn 3\n0 0 0\n0 0 0\n0 0 0\n");
    assert_eq!(stdout(&run(&["graph", "constructor", path])), "none\n");

    let order = ws.file("order.txt", "gf2\nn 3\n0 0 0\n1 0 0\n1 1 0\n");
    let lin = stdout(&run_with(&["graph", "linorder", "--p", "1", "--q", "3"], &order));
    assert_eq!(lin, "gf2\nn 3\n0 0 0\n1 0 0\n0 0 0\n");

    let dot = stdout(&run(&["graph", "dot", path]));
    assert_eq!(dot, "digraph {\n  x1;\n  x2;\n  x3;\n  x2 -> x1;\n  x3 -> x2;\n}\n");

    let err = failure(&run(&["graph", "chain", "--p", "1", "--q", "3", "--i", "3", "--j", "1", path]), 1);
    assert!(err.starts_with("error: precondition violated"), "{err}");
    let err = failure(&run_with(&["graph", "dot"], &ws.file("q.txt", RATIONAL_3X3)), 1);
    assert!(err.contains("requires gf2"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    failure(&run(&[]), 2);
    failure(&run(&["bogus"]), 2);
    failure(&run(&["census"]), 2);
    failure(&run(&["apply", "--mode", "diagonal", "--vector", "1", "x"]), 2);
    failure(&run(&["sequentialize", "--method", "lu", "x"]), 2);
}

#[test]
fn domain_errors_have_distinct_one_line_diagnostics() {
    let ws = Workspace::new();
    let cases = [
        ("missing", None),
        ("short row", Some("rational\nn 2\n1 2\n3\n")),
        ("bad field", Some("gfp 8\nn 1\n1\n")),
        ("bad literal", Some("gf2\nn 1\nx\n")),
        ("dimension", Some("rational\nn 2\n1 2\n3 4\n")),
    ];
    let mut seen = std::collections::HashSet::new();
    for (name, text) in cases {
        let path = match text {
            Some(t) => ws.file(name, t),
            None => ws.dir.path().join("does-not-exist"),
        };
        let out = if name == "dimension" {
            run_with(&["apply", "--vector", "1,2,3"], &path)
        } else {
            run_with(&["smatrix"], &path)
        };
        let err = failure(&out, 1);
        assert_eq!(err.lines().count(), 1, "{name}: {err}");
        assert!(err.starts_with("error: "), "{name}: {err}");
        assert!(seen.insert(err.clone()), "{name}: duplicate diagnostic {err}");
    }
}

#[test]
fn outputs_are_deterministic_and_reparse() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", "gf2\nn 3\n1 1 1\n1 1 1\n0 1 1\n");
    for args in [&["smatrix"][..], &["regularize"], &["phi"], &["preimage"], &["graph", "constructs"]] {
        let a = run_with(args, &m);
        let b = run_with(args, &m);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let text = stdout(&a);
        if text != "none\n" {
            let back: Matrix<Binary> = parse_matrix(&text).unwrap();
            assert_eq!(back.to_string(), text, "{args:?}");
        }
    }
    let coding = stdout(&run_with(&["sequentialize", "--coding-only"], &ws.file("q.txt", ZERO_PIVOT_3X3)));
    let again = run_with(&["sequentialize", "--coding-only"], &ws.file("q2.txt", ZERO_PIVOT_3X3));
    assert_eq!(coding, stdout(&again));
}
