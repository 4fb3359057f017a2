use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blocking-cli")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verifies_the_run_profile_identity() {
    let out = cli(&["verify", "--identity", "thm1", "--degree", "25"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "thm1 to degree 25: PASS\n");
}

#[test]
fn counts_two_coloured_overpartitions() {
    let out = cli(&["enumerate", "--what", "overpartitions", "--n", "4", "--colors", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "14\n");
}

#[test]
fn natural_dynamics_pass_detailed_balance() {
    let out = cli(&["check-db", "--model", "natural", "--rank", "6", "--u", "1/2", "--q", "1/3", "--c", "0", "--n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with(" 0 failures\n"));
}

#[test]
fn injected_fault_exits_one() {
    let out = cli(&["verify", "--identity", "thm1", "--degree", "6", "--fault", "left-sentinel"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn bad_parameters_exit_two() {
    let out = cli(&["check-db", "--model", "ising", "--u", "3/2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("u = 3/2"));
    assert_eq!(cli(&["check-db", "--model", "nonsense"]).status.code(), Some(2));
}

#[test]
fn json_reports_parse() {
    let out = cli(&["--json", "verify", "--identity", "thm2", "--n", "-1", "--degree", "8"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["identity"], "thm2(n=-1)");
    assert_eq!(v["status"], "PASS");
}

#[test]
fn simulation_is_byte_stable_at_fixed_seed() {
    let args = ["--json", "simulate", "--model", "tables", "--rank", "4", "--events", "20000", "--seed", "7"];
    let first = cli(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, cli(&args).stdout);
    let sequential = cli(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(first.stdout, sequential.stdout);
}

#[test]
fn exports_coefficients_as_csv() {
    let out = cli(&["export-coeffs", "--series", "thm1", "--degree", "1"]);
    assert_eq!(
        stdout(&out),
        "q_degree,z_exp,y_exp,numerator,denominator\n0,-1,0,1,1\n0,0,0,1,1\n1,-2,0,1,1\n1,-1,1,1,1\n1,0,1,1,1\n1,1,0,1,1\n"
    );
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("blocking-cli-{}.txt", std::process::id()));
    let out = cli(&["enumerate", "--what", "partitions", "--n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "[3]\n[2, 1]\n[1, 1, 1]\n");
    std::fs::remove_file(path).unwrap();
}
