use std::process::{Command, Output};

fn gpoisson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpoisson"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn lists_builtin_charts() {
    let o = gpoisson(&["charts"]);
    assert!(o.status.success());
    for name in ["flat2", "flat4", "sphere2", "halfplane", "tlift1", "tlift1q"] {
        assert!(stdout(&o).contains(name));
    }
}

#[test]
fn brackets_on_the_flat_plane() {
    let o = gpoisson(&["bracket", "builtin:flat2", "--alpha", "x", "--beta", "y"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = gpoisson(&["bracket", "builtin:flat2", "--alpha", "dx", "--beta", "y", "--odd"]);
    assert_eq!(stdout(&o).trim(), "-1");
    let o = gpoisson(&["bracket", "builtin:sphere2", "--alpha", "x*y", "--beta", "x^2", "--fastpath"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("agree:    true"));
}

#[test]
fn exit_codes_follow_the_outcome() {
    let passing = gpoisson(&["check", "builtin:tlift1", "--suite", "paracomplex", "--samples", "2"]);
    assert_eq!(passing.status.code(), Some(0), "{}", stdout(&passing));
    let failing = gpoisson(&["check", "manifests/flat4_violating_l.chart", "--suite", "theorems", "--samples", "2"]);
    assert_eq!(failing.status.code(), Some(1));
    let text = stdout(&failing);
    let line = text.lines().find(|l| l.contains(" locally-hamiltonian ")).unwrap();
    assert!(line.starts_with("FAIL"));
    assert!(text.contains("witness: <L_x, i_x>"));
    assert_eq!(gpoisson(&["check", "manifests/not_closed.chart"]).status.code(), Some(2));
    assert_eq!(gpoisson(&["check", "builtin:nowhere"]).status.code(), Some(2));
    assert_eq!(gpoisson(&["check", "builtin:flat2", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        gpoisson(&["bracket", "builtin:flat2", "--alpha", "q", "--beta", "y"]).status.code(),
        Some(2)
    );
    assert_eq!(gpoisson(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn manifest_and_json_reports() {
    let o = gpoisson(&["check", "manifests/sphere.chart", "--suite", "theorems", "--samples", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("valid json");
    assert_eq!(v["chart"], "sphere");
    assert_eq!(v["seed"], 42);
    let again = gpoisson(&["check", "manifests/sphere.chart", "--suite", "theorems", "--samples", "2", "--format", "json"]);
    assert_eq!(o.stdout, again.stdout);
}
