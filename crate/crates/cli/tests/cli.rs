use std::process::{Command, Output};

use serde_json::Value;
use uwrt_core::exactalg::{BRational, CycNumber, RootSpec, Theory};
use uwrt_core::wrt::lens_tau_prime_closed;

fn uwrt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uwrt")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = uwrt(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["wrt", "lens", "--b", "5", "--a", "1", "--d", "1", "--r", "7", "--l", "1", "--theory", "so3"]), "1\n");
    assert_eq!(stdout(&["gauss", "--r", "4", "--x", "2", "--y", "1"]), "0\n");
    assert_eq!(stdout(&["dedekind", "--a", "1", "--b", "5"]), "1/5\n");
    assert_eq!(stdout(&["frobenius", "--n", "4", "--k", "3", "--b", "3", "--index"]), "729\n");
    assert_eq!(stdout(&["frobenius", "--n", "1", "--k", "2", "--b", "2", "--root"]), "1/2 1/2\n");
}

#[test]
fn json_round_trip() {
    let cases: [(i64, i64, u64, u64, i64, &str); 4] =
        [(-5, 2, 1, 7, 3, "so3"), (9, 2, 1, 9, 1, "so3"), (7, -3, 3, 5, 2, "su2"), (-9, 4, 1, 6, 5, "su2")];
    for (b, a, d, r, l, theory) in cases {
        let args = [
            "--json", "wrt", "lens", "--b", &b.to_string(), "--a", &a.to_string(), "--d", &d.to_string(),
            "--r", &r.to_string(), "--l", &l.to_string(), "--theory", theory,
        ];
        let rec: Value = serde_json::from_str(stdout(&args).trim()).unwrap();
        let keys: Vec<&str> = rec.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["coeffs", "command", "float", "inputs", "modulus"]);
        let n = rec["modulus"].as_u64().unwrap();
        let coeffs: Vec<BRational> = rec["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().parse().unwrap()).collect();
        let parsed = CycNumber::from_coeffs(n, &coeffs).unwrap();
        let xi = RootSpec::new(r, l, Theory::parse(theory).unwrap()).unwrap();
        assert_eq!(parsed, lens_tau_prime_closed(b, a, d, &xi).unwrap(), "L({b},{a}) d={d} {xi}");
    }
}

#[test]
fn float_field_present_only_on_request() {
    let args = ["--json", "gamma", "--b", "3", "--r", "7", "--l", "3"];
    let rec: Value = serde_json::from_str(stdout(&args).trim()).unwrap();
    assert!(rec["float"].is_null());
    let mut with_float = vec!["--float"];
    with_float.extend_from_slice(&args);
    let rec: Value = serde_json::from_str(stdout(&with_float).trim()).unwrap();
    assert_eq!(rec["float"].as_array().unwrap().len(), 2);
}

#[test]
fn deterministic_output() {
    let args = ["--json", "unified", "diagonal", "--spec", "L(3,1);D(-5,j=3)", "--r", "7"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn exit_codes() {
    assert_eq!(uwrt(&["bogus"]).status.code(), Some(2));
    let out = uwrt(&["wrt", "lens", "--b", "4", "--a", "2", "--r", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not coprime"));
    assert_eq!(uwrt(&["gamma", "--b", "1", "--r", "4", "--theory", "so3"]).status.code(), Some(1));
    assert_eq!(uwrt(&["verify", "--suite", "nope"]).status.code(), Some(1));
}

#[test]
fn verify_reports() {
    let out = stdout(&["--json", "verify", "--suite", "frobenius"]);
    let rec: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(rec["inputs"]["run"], rec["inputs"]["passed"]);
    assert!(rec["inputs"]["first_failure"].is_null());
    let out = Command::new(env!("CARGO_BIN_EXE_uwrt"))
        .args(["verify", "--suite", "cyclotomic-coeffs"])
        .env("WRT_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("cyclotomic-coeffs: "));
}
