//! End-to-end checks of the binary: output formats, exit codes, and
//! byte-level determinism of the sweep.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weyl-restrict"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn roots_json_matches_documented_shape() {
    let out = run(&["roots", "--type", "B", "--rank", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], "1");
    assert_eq!(v["type"], "B");
    assert_eq!(v["rank"], 2);
    assert_eq!(v["roots"].as_array().unwrap().len(), 8);
    assert_eq!(v["simple"].as_array().unwrap().len(), 2);
}

#[test]
fn weyl_element_json_and_max_order_guard() {
    let out = run(&["weyl", "--type", "A", "--rank", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], 6);
    let first = &v["elements"][0];
    assert!(first["perm"].is_array());
    assert!(first["signs"].is_array());
    // the guard refuses large serializations
    let out = run(&["weyl", "--type", "B", "--rank", "6", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "weyl",
        "--type",
        "B",
        "--rank",
        "6",
        "--json",
        "--max-order",
        "50000",
    ]);
    assert!(out.status.success());
}

#[test]
fn verify_admext_json_shape() {
    let out = run(&[
        "verify-admext",
        "--type",
        "D",
        "--k",
        "5",
        "--n",
        "4",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["theorem"], "AdmExt");
    assert_eq!(v["type"], "D");
    assert_eq!(v["k"], 5);
    assert_eq!(v["n"], 4);
    assert_eq!(v["pass"], true);
    let ids: Vec<&str> = v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"2-strict-containment"));
    assert!(ids.contains(&"4-extended-surjectivity"));
}

#[test]
fn spaces_lookup_matches_table() {
    let out = run(&[
        "spaces", "--family", "AIII", "--p", "3", "--q", "2", "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["dim"], 12);
    assert_eq!(v["sigma_half"], "B_2");
    assert_eq!(v["reduced"], false);
}

#[test]
fn transfer_reports_shift_and_symbol() {
    let out = run(&[
        "transfer",
        "--from",
        "BDI:7,1",
        "--to",
        "BDI:4,1",
        "--op",
        "laplacian",
        "--rho-convention",
        "paper",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // (49 - 16)/4
    assert_eq!(v["shift"]["num"], 33);
    assert_eq!(v["shift"]["den"], 4);
    // table convention differs: (36 - 9)/4
    assert_eq!(v["table_shift"]["num"], 27);
    assert!(v["symbol_n"]["symbol"]["terms"].is_array());
}

#[test]
fn exit_codes_distinguish_failure_from_usage_error() {
    // verified-false claim: propagation check that fails
    let out = run(&["propagate", "--from", "CI:3", "--to", "BDI:5,2"]);
    assert_eq!(out.status.code(), Some(1));
    // usage errors
    let out = run(&["roots", "--type", "E", "--rank", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
    // precondition error: remark bound violated
    let out = run(&["remark", "--type", "B", "--rank", "3", "--remove", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // passing checks exit 0
    let out = run(&["verify-ihia", "--family", "A-complex", "--j", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify-g-k", "--from", "BDI:6,3", "--to", "BDI:4,2"]);
    assert_eq!(out.status.code(), Some(0));
    // non-propagating pair is a precondition error for the theorem
    let out = run(&["verify-g-k", "--from", "CI:3", "--to", "BDI:4,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_var_caps_enumeration() {
    let out = bin()
        .args(["weyl", "--type", "B", "--rank", "5"])
        .env("WEYL_RESTRICT_MAX_RANK", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("enumeration cap"), "{err}");
}

#[test]
fn sweep_json_is_byte_identical_across_runs() {
    let a = run(&["sweep", "--json"]);
    let b = run(&["sweep", "--json"]);
    assert!(a.status.success(), "sweep must pass");
    assert_eq!(a.stdout, b.stdout, "sweep --json must be byte-identical");
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["max_rank"], 6);
}
