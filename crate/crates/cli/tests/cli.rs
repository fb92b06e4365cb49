use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_lions-jet");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("LIONS_JET_CAP").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const KERNEL: &str = r#"{"e":1,"d":1,"arity":2,"spatial":false,"terms":[
  {"out":0,"coeff":"1","exps":[[2],[1]]},
  {"out":0,"coeff":"-1/2","exps":[[0],[3]]}]}"#;

#[test]
fn enum_lists_bell_many_sequences() {
    let o = run(&["enum", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 15);
    let o = run(&["enum", "2", "--tagged"]);
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), ["0,0", "0,1", "1,0", "1,1", "1,2"]);
    let o = run(&["enum", "2", "--base", "1,2,1"]);
    assert_eq!(stdout(&o).lines().count(), 17);
}

#[test]
fn grade_reports_membership() {
    let o = run(&["--output", "json", "grade", "(1,2,1)", "--alpha", "1", "--beta", "1/2", "--gamma", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["grade"], "3/2");
    assert_eq!(v["in_graded_set"], true);
}

#[test]
fn verify_passes_and_is_reproducible() {
    let a = run(&["--output", "json", "verify", "empirical", "--seed", "42", "--trials", "100"]);
    assert_eq!(a.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], 100);
    assert_eq!(v["failed"], 0);
    let b = run(&["--output", "json", "verify", "empirical", "--seed", "42", "--trials", "100", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_replays_a_dumped_instance() {
    let dir = tempfile::tempdir().unwrap();
    let inst = lions_jet::instances::generate(lions_jet::instances::Suite::Schwarz, 5);
    let path = write(dir.path(), "inst.json", &serde_json::to_string(&inst).unwrap());
    let o = run(&["verify", "--replay", &path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    // An instance the core rejects is reported as a failure, not a crash.
    let mut bad = lions_jet::instances::generate(lions_jet::instances::Suite::Empirical, 5);
    bad.index = Some(vec![99]);
    let path = write(dir.path(), "bad.json", &serde_json::to_string(&bad).unwrap());
    let o = run(&["--output", "json", "verify", "--replay", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("error"));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(run(&["enum", "banana"]).status.code(), Some(2));
    assert_eq!(run(&["grade", "1,x", "--alpha", "1", "--beta", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nosuchsuite"]).status.code(), Some(2));
}

#[test]
fn enumeration_cap_is_read_from_the_environment() {
    let o = Command::new(BIN).args(["enum", "5"]).env("LIONS_JET_CAP", "3").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn expand_and_converge_on_files() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "k.json", KERNEL);
    let x = write(dir.path(), "x.json", r#"[["1"],["2"],["-1"]]"#);
    let y = write(dir.path(), "y.csv", "# targets\n1/2\n3\n0\n");

    let o = run(&["--output", "json", "expand", "--kernel", &k, "--points", &x, "--targets", &y, "--order", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["identity_defect"].as_array().unwrap().iter().all(|d| d == "0"));
    let again = run(&["--output", "json", "expand", "--kernel", &k, "--points", &x, "--targets", &y, "--order", "2"]);
    assert_eq!(o.stdout, again.stdout);

    let o = run(&["--mode", "float", "expand", "--kernel", &k, "--points", &x, "--targets", &y, "--order", "2", "--moment", "3"]);
    assert!(o.status.success());
    let o = run(&["expand", "--kernel", &k, "--points", &x, "--targets", &y, "--order", "2", "--moment", "3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["converge", "--kernel", &k, "--points", &x, "--direction", &y, "--order", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("h,remainder,bound"));
    assert_eq!(text.lines().count(), 8);
}
