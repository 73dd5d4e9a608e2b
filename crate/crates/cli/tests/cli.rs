use std::path::PathBuf;
use std::process::{Command, Output};

use knotclock_core::{parse_diagram, Lattice};
use serde_json::Value;

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn knotclock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotclock"))
        .args(args)
        .env_remove("KNOTCLOCK_TABLE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("knotclock-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn missing_file_is_input_error() {
    let o = knotclock(&["parse", "/nonexistent/knot.pd"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn unknown_subcommand_and_help() {
    assert_eq!(knotclock(&["frobnicate"]).status.code(), Some(2));
    let help = knotclock(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("clocknum"));
}

#[test]
fn bad_stars_and_unknown_suite() {
    let trefoil = data("diagrams/trefoil.pd");
    assert_eq!(knotclock(&["states", &trefoil, "--stars", "F0,F99"]).status.code(), Some(2));
    assert_eq!(knotclock(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn trefoil_clock_number() {
    let o = knotclock(&["--json", "clocknum", &data("diagrams/trefoil.pd"), "--all-stars"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["min_over_stars"], 3);
    assert_eq!(v["crossing_count"], 3);
    assert_eq!(v["proper"], true);
}

#[test]
fn states_listing_matches_count() {
    let o = knotclock(&["--json", "states", &data("diagrams/figure8.pd"), "--stars", "F0,F1", "--list"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let listed = v["states"].as_array().unwrap();
    assert_eq!(v["count"].as_u64().unwrap() as usize, listed.len());
    assert!(listed.iter().any(|s| *s == v["clocked"]));
    assert!(listed.iter().any(|s| *s == v["counterclocked"]));
}

#[test]
fn lattice_json_round_trip_and_output_flag() {
    let out = scratch("granny.json");
    let o = knotclock(&[
        "lattice",
        &data("diagrams/granny.pd"),
        "--stars",
        "F0,F1",
        "--format",
        "json",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let l = Lattice::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(l.states.len(), 9);
    assert_eq!(l.arrows.len(), 12);
    assert_eq!(l.height, 5);

    let dot = knotclock(&["lattice", &data("diagrams/granny.pd"), "--stars", "F0,F1"]);
    assert!(stdout(&dot).starts_with("digraph"));
}

#[test]
fn generated_two_bridge_parses() {
    let o = knotclock(&["gen", "two-bridge", "2,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let d = parse_diagram(&text).unwrap();
    assert_eq!(d.universe.vertex_count(), 4);
    assert!(d.universe.is_proper());

    let odd = knotclock(&["--json", "gen", "two-bridge", "2,2", "--odd-form"]);
    let v: Value = serde_json::from_str(&stdout(&odd)).unwrap();
    assert_eq!(v["fraction"][0], 5);
    assert_eq!(v["form"], "odd");
    assert_eq!(knotclock(&["gen", "two-bridge", "2"]).status.code(), Some(2));
}

#[test]
fn sum_is_reported_non_proper() {
    let sum = scratch("sum.pd");
    let o = knotclock(&["-o", sum.to_str().unwrap(), "gen", "sum", &data("diagrams/trefoil.pd"), &data("diagrams/figure8.pd")]);
    assert_eq!(o.status.code(), Some(0));
    let p = knotclock(&["--json", "parse", sum.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&p)).unwrap();
    assert_eq!(v["proper"], false);
}

#[test]
fn alexander_of_figure_eight() {
    let o = knotclock(&["alex", &data("diagrams/figure8.pd"), "--stars", "F0,F1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "t^2 - 3t + 1");
}

#[test]
fn verify_all_passes() {
    let o = knotclock(&["--json", "verify", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["summary"]["pass"].as_u64().unwrap() > 0);
}

#[test]
fn table_override() {
    let dir = data("");
    let o = Command::new(env!("CARGO_BIN_EXE_knotclock"))
        .args(["verify", "oracle"])
        .env("KNOTCLOCK_TABLE", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));

    let bad = scratch("corrupt.pdtab");
    std::fs::write(&bad, "3_1\tX(1,2\tgarbage\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_knotclock"))
        .args(["verify", "oracle"])
        .env("KNOTCLOCK_TABLE", &bad)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = knotclock(&["verify", "oracle", "--table", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_is_stable_across_runs() {
    for args in [
        vec!["--json", "clocknum", "DIAG", "--all-stars"],
        vec!["--json", "verify", "lemma42", "--seed", "7"],
        vec!["--json", "lattice", "DIAG", "--stars", "F0,F1"],
    ] {
        let granny = data("diagrams/granny.pd");
        let args: Vec<&str> = args.iter().map(|a| if *a == "DIAG" { granny.as_str() } else { a }).collect();
        let (a, b) = (knotclock(&args), knotclock(&args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        serde_json::from_slice::<Value>(&a.stdout).unwrap();
    }
}
