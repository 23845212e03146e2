use std::path::Path;
use std::process::{Command, Output};

fn axial<P: AsRef<Path>>(dir: P, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axial")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn build_2a_emits_a_three_dimensional_file() {
    let o = axial(".", &["build", "ns:2A"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("dim 3\n"));
    assert!(text.contains("basis a0 a1 a_rho\n"));
}

#[test]
fn idempotents_of_2b_at_length_two() {
    let dir = tempfile::tempdir().unwrap();
    let built = axial(dir.path(), &["build", "ns:2B"]);
    std::fs::write(dir.path().join("2b.alg"), built.stdout).unwrap();
    let o = axial(dir.path(), &["idempotents", "2b.alg", "--length", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "found: 1\na0+a1  [1 1]\ncomplete: true\n");
}

#[test]
fn newton_backend_honours_budget_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_axial"))
        .args(["idempotents", "ns:4B", "--length", "19/5", "--backend", "newton_reconstruct"])
        .env("AXIAL_IDEMPOTENT_BUDGET", "starts=20,iterations=60")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("complete: false"));
    let bad = Command::new(env!("CARGO_BIN_EXE_axial"))
        .args(["idempotents", "ns:4B", "--length", "1"])
        .env("AXIAL_IDEMPOTENT_BUDGET", "starts=lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn m11_shape_sizes() {
    let o = axial(".", &["shape", "fixture:M11", "--enumerate"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("nodes: 6\n"));
    let line = text.lines().find(|l| l.starts_with("sizes: ")).unwrap();
    let mut sizes: Vec<usize> = line[7..].split(' ').map(|s| s.parse().unwrap()).collect();
    sizes.sort();
    assert_eq!(sizes, [660, 990, 1980, 1980, 3960, 3960]);
    assert!(text.contains("shapes: 1\n"));
}

#[test]
fn affine_shapes_up_to_agl() {
    let o = axial(".", &["shape", "fixture:3^2:2", "--up-to", "fixture:AGL(2,3)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("shapes: 5\n"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["shape", "fixture:M10", "--enumerate"][..],
        &["idempotents", "ns:3A", "--length", "1"],
        &["miyamoto", "ns:6A", "--seeds", "a0,a1"],
    ] {
        assert_eq!(axial(".", args).stdout, axial(".", args).stdout);
    }
}

#[test]
fn axis_check_exit_codes() {
    assert_eq!(axial(".", &["axis-check", "ns:3A", "a0"]).status.code(), Some(0));
    let o = axial(".", &["axis-check", "ns:3A", "a0+a1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("axis: false"));
    assert_eq!(axial(".", &["axis-check", "ns:3A", "zz"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let o = axial(".", &["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
    assert_eq!(axial(".", &["shape", "fixture:M11", "--bogus"]).status.code(), Some(2));
    assert_eq!(axial(".", &["shape", "fixture:Nope"]).status.code(), Some(2));
    assert_eq!(axial(".", &["build", "ns:7Z"]).status.code(), Some(2));
}

#[test]
fn malformed_file_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.alg"), "dim 1\nfield Q\nbasis x\nproducts\n0 0 : 1/0\n").unwrap();
    let o = axial(dir.path(), &["frobenius", "bad.alg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));
}

#[test]
fn decompose_table() {
    let o = axial(".", &["decompose", "ns:4B", "--axes", "a0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(1): 1\n(0): 2\n(1/4): 1\n(1/32): 1\n");
}

#[test]
fn extend_identity_on_a_joint_zero_line() {
    // in 2B the joint 0-eigenspace of a0 is spanned by a1, a module over itself
    let o = axial(".", &["extend", "ns:2B", "--sub", "a1", "--map", "1", "--module", "a1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("dimension: 1\n"));
    // map of the wrong size
    assert_eq!(axial(".", &["extend", "ns:2B", "--sub", "a1", "--map", "1,0;0,1", "--module", "a1"]).status.code(), Some(2));
}

#[test]
fn gram_rank_m11() {
    let o = axial(".", &["gram-rank", "fixture:M11", "--shape", "3A,2A,5A,4B,6A,3A"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "size: 165\nrank: 165\n");
}

#[test]
fn group_file_input() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("s3.grp"), "degree 3\ngen 1 2 0\ngen 1 0 2\n").unwrap();
    let o = axial(dir.path(), &["shape", "s3.grp", "--enumerate"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("nodes: 1\n"));
    assert!(stdout(&o).contains("shapes: 2\n"));
}
