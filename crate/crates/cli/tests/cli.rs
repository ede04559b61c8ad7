use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

const SPEC: &str = "\
[manifold]
m = 1
[fields]
scalar f = z1*zb1
vector X = z1, 0
vector Y = 1, zb1^2
oneform w = zb1, 0
endo F = [zb1, 0; 0, z1]
[connection]
Gamma[1][1][2] = z1
Gamma[1][2][1] = z1
Gamma[2][2][2] = zb1^2
[verify]
cases = 3
";

fn spec_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paralift")).args(args).output().unwrap()
}

fn run_spec(spec: &NamedTempFile, args: &[&str]) -> Output {
    let mut all = args.to_vec();
    let path = spec.path().to_str().unwrap();
    all.extend(["--spec", path]);
    run(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn complete_lift_of_product() {
    let spec = spec_file(SPEC);
    let o = run_spec(&spec, &["lift", "--field", "f", "--kind", "complete"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "u1*zb1 + ub1*z1");
    let o = run_spec(&spec, &["lift", "--field", "f", "--kind", "vertical"]);
    assert_eq!(stdout(&o).trim(), "z1*zb1");
}

#[test]
fn lift_machine_format() {
    let spec = spec_file(SPEC);
    let o = run_spec(&spec, &["lift", "--field", "w", "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["chart"], "TM(m=1)");
    assert_eq!(v["kind"], "oneform");
    assert_eq!(v["components"], serde_json::json!(["ub1", "0", "zb1", "0"]));
}

#[test]
fn torsion_of_symmetric_connection_is_zero() {
    let spec = spec_file(SPEC);
    let o = run_spec(&spec, &["torsion"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().all(|l| l.starts_with("T[") && l.ends_with("= 0")));
}

#[test]
fn torsion_of_asymmetric_connection() {
    let spec = spec_file("[manifold]\nm = 1\n[connection]\nGamma[1][1][2] = z1\n");
    let o = run_spec(&spec, &["torsion"]);
    let text = stdout(&o);
    assert!(text.contains("T[1][1][2] = z1"));
    assert!(text.contains("T[1][2][1] = -z1"));
}

#[test]
fn bracket_and_nijenhuis() {
    let spec = spec_file(SPEC);
    // [z1 d/dz1, d/dz1 + zb1^2 d/dzb1] = -d/dz1
    let o = run_spec(&spec, &["bracket", "X", "Y"]);
    assert_eq!(stdout(&o).trim(), "d/dz1: -1\nd/dzb1: 0");
    let o = run_spec(&spec, &["nijenhuis", "J", "X", "Y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "d/dz1: 0\nd/dzb1: 0");
}

#[test]
fn theorem_suite_checks_the_spec_connection() {
    let spec = spec_file(SPEC);
    let o = run_spec(&spec, &["theorem1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("PASS  corrected connection parallelizes J"));
    assert!(text.contains("cases=3 + 3 degenerate"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn torsional_spec_connection_is_an_input_error() {
    let spec = spec_file("[manifold]\nm = 1\n[connection]\nGamma[1][1][2] = 1\n");
    let o = run_spec(&spec, &["theorem1", "--cases", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corollary_and_machine_records() {
    let o = run(&["corollary", "--cases", "2", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["suite"], "corollary");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["cases"], 2);
    }
}

#[test]
fn verify_all_text_report() {
    let o = run(&["verify-all", "--m", "1", "--seed", "0", "--cases", "2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("coverage\n"));
    assert!(text.contains("suite corollary"));
    assert!(text.trim_end().ends_with("0 internal-consistency failures"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["theorem1", "--m", "2", "--cases", "1", "--format", "machine"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn print_jc_reports_the_sign_relation() {
    let o = run(&["print-jc", "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["derived"][0][0], "-1*j");
    assert_eq!(v["displayed"][0][0], "1*j");
    assert_eq!(v["relation"], "opposite sign");
    assert_eq!(v["displayed_squares_to_identity"], true);
}

#[test]
fn input_errors_exit_with_two() {
    let missing = run(&["lift", "--spec", "/definitely/not/here.spec", "--field", "f"]);
    assert_eq!(missing.status.code(), Some(2));

    let bad = spec_file("[manifold]\nm = 1\n[fields]\nvector X = z1\n");
    let o = run_spec(&bad, &["lift", "--field", "X"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));

    let spec = spec_file(SPEC);
    assert_eq!(run_spec(&spec, &["lift", "--field", "nope"]).status.code(), Some(2));
    assert_eq!(run_spec(&spec, &["bracket", "X", "f"]).status.code(), Some(2));
    assert_eq!(run_spec(&spec, &["lift", "--field", "F", "--kind", "vertical"]).status.code(), Some(2));
    assert_eq!(run_spec(&spec, &["torsion", "--m", "2"]).status.code(), Some(2));
    assert_eq!(run(&["torsion"]).status.code(), Some(2));
    assert_eq!(run(&["verify-all", "--cases", "0"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}
