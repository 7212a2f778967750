use std::process::Command;

use clap::Parser;
use negq::cli::{run, Cli, Output, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn invoke(args: &[&str]) -> Output {
    let mut argv = vec!["negq"];
    argv.extend_from_slice(args);
    run(&Cli::try_parse_from(argv).expect("valid arguments"))
}

fn json(args: &[&str]) -> Value {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let out = invoke(&argv);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid JSON")
}

fn has_keys(v: &Value, keys: &[&str]) {
    for k in keys {
        assert!(v.get(k).is_some(), "missing key {k} in {v}");
    }
}

#[test]
fn every_subcommand_emits_its_documented_keys() {
    let v = json(&["words", "enumerate", "--n", "4", "--k", "2"]);
    has_keys(&v, &["command", "seed", "n", "k", "rows"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    has_keys(&v["rows"][0], &["bits", "pairing", "mask", "admissible", "inv", "a", "p", "weight"]);

    let v = json(&["partitions", "list", "--n", "5", "--k", "2", "--admissible-only"]);
    has_keys(
        &v["rows"][0],
        &["partition", "parts", "word", "pairing", "admissible", "size", "special_corners", "weight"],
    );

    let v = json(&["qbinom", "--n", "5", "--k", "2", "--primed", "--at", "2"]);
    has_keys(&v, &["n", "k", "primed", "poly", "terms", "at", "value"]);
    assert_eq!(v["poly"], "q^6 - q^5 + 2q^4 - 2q^3 + 2q^2 - q + 1");
    assert_eq!(v["value"], "55");

    let v = json(&["qt", "--n", "3", "--k", "1", "--q", "2", "--x-poly", "--eval-order", "3"]);
    has_keys(&v, &["n", "k", "q", "poly", "terms", "uniform_sign", "symmetric", "x", "eval"]);
    has_keys(&v["x"], &["e", "poly", "terms", "at_one"]);
    assert_eq!(v["eval"]["value"], "12");

    let v = json(&["gf", "count-nondeg", "--p", "2", "--n", "3", "--k", "1"]);
    has_keys(&v, &["p", "e", "q", "n", "k", "m", "count", "formula", "match"]);
    assert_eq!(v["count"], 12);

    let v = json(&["gf", "csp", "--p", "2", "--n", "3", "--k", "1"]);
    has_keys(&v, &["q", "n", "k", "x_poly", "rows", "match"]);
    let counts: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["fixed_count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [12, 12, 0]);

    let v = json(&["gf", "special-entries", "--q", "2", "--n", "5", "--k", "2"]);
    has_keys(&v, &["q", "n", "k", "count", "primed", "match"]);
    assert_eq!(v["count"], 55);

    let v = json(&["gf", "numbth", "--q", "2", "--n", "3", "--order", "9"]);
    assert_eq!(v["report"]["m"], 3);

    let v = json(&["ennola", "degrees", "--n", "4", "--at", "-2"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);

    let v = json(&["ennola", "verify", "--n", "4", "--k", "2", "--q", "3"]);
    has_keys(&v["report"], &["symmetric", "general_linear", "unitary"]);

    let v = json(&["verify-all", "--max-n", "4", "--only", "C1", "C7"]);
    has_keys(&v, &["max_n", "budget", "checks", "passed"]);
    has_keys(&v["checks"][0], &["id", "name", "passed", "detail", "counterexample"]);
}

#[test]
fn json_is_deterministic_and_records_the_seed() {
    let args = ["--json", "--seed", "17", "verify-all", "--only", "S3"];
    let a = invoke(&args);
    let b = invoke(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["seed"], 17);
    assert_eq!(v["command"], "verify-all");
}

#[test]
fn domain_errors_are_usage_errors() {
    for args in [
        &["qbinom", "--n", "2", "--k", "3"][..],
        &["qt", "--n", "3", "--k", "1", "--q", "-1"],
        &["qt", "--n", "4", "--k", "1", "--q", "2", "--x-poly"],
        &["gf", "count-nondeg", "--p", "4", "--n", "3", "--k", "1"],
        &["gf", "csp", "--p", "2", "--n", "3", "--k", "1", "--order", "4"],
        &["gf", "count-nondeg", "--p", "2", "--n", "3", "--k", "1", "--budget", "10"],
        &["verify-all", "--only", "C99"],
    ] {
        let out = invoke(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(out.stderr.starts_with("error:"), "{args:?}: {}", out.stderr);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_negq");
    let ok = Command::new(bin).args(["qbinom", "--n", "4", "--k", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "q^4 + q^3 + 2q^2 + q + 1\n");

    let bad = Command::new(bin).args(["no-such-command"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));

    let capped = Command::new(bin)
        .args(["gf", "count-nondeg", "--p", "2", "--n", "3", "--k", "1"])
        .env("NEGQ_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));

    let flag_wins = Command::new(bin)
        .args(["--budget", "1000", "gf", "count-nondeg", "--p", "2", "--n", "3", "--k", "1"])
        .env("NEGQ_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}
