use std::process::Command;

use nonein::{connected_sum_invariants, parse, solve, verify, BigInt, ChenParams};
use nonein_cli::{run, Outcome, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn nonein(args: &[&str]) -> Outcome {
    run(std::iter::once("nonein").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = nonein(args);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn int(v: &Value) -> BigInt {
    match v {
        Value::Number(n) => n.to_string().parse().unwrap(),
        other => panic!("not an integer: {other}"),
    }
}

#[test]
fn invariants_of_mixed_sum() {
    let out = nonein(&["invariants", "K3 # 2*~CP2 # S1xS3"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("e            24\n"));
    assert!(out.stdout.contains("sigma        -18\n"));
    assert!(out.stdout.contains("b1           1\n"));
    assert!(out.stdout.contains("not computed"));

    let v = json(&["--json", "invariants", "K3 # 2*~CP2 # S1xS3"]);
    let inv = &v["invariants"];
    assert_eq!((int(&inv["e"]), int(&inv["sigma"]), int(&inv["b1"])), (24.into(), (-18).into(), 1.into()));
    assert_eq!(v["b2_plus"], Value::Null);
}

#[test]
fn huge_integers_stay_exact() {
    let v = json(&["invariants", "Chen(123456789012345678901234567890,98765432109876543210987654321) # 3*S4", "--json"]);
    let x: BigInt = "123456789012345678901234567890".parse().unwrap();
    let y: BigInt = "98765432109876543210987654321".parse().unwrap();
    assert_eq!(int(&v["invariants"]["e"]), BigInt::from(12) * &x - &y);
    assert_eq!(int(&v["invariants"]["sigma"]), &y - BigInt::from(8) * &x);
}

#[test]
fn k3_obstruction_table() {
    let out = nonein(&["obstructions", "K3"]);
    assert_eq!(out.code, EXIT_OK);
    let row = out.stdout.lines().find(|l| l.starts_with("HitchinThorpe")).unwrap();
    assert!(row.contains("BorderlineException"), "{row}");

    let v = json(&["obstructions", "K3", "--simplicial-volume", "0", "--json"]);
    let verdicts = v["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 4);
    assert_eq!(verdicts[0]["status"], "BorderlineException");
    assert_eq!(verdicts[1]["status"], "NotDetermined");
}

#[test]
fn obstructions_with_rational_volume() {
    let v = json(&["--json", "obstructions", "CP2", "--simplicial-volume", "153600/2"]);
    assert_eq!(v["simplicial_volume"], Value::Number(76800.into()));
    assert_eq!(v["verdicts"][1]["status"], "Obstructed");
    let v = json(&["--json", "obstructions", "CP2", "--simplicial-volume", "7/3"]);
    assert_eq!(v["simplicial_volume"], "7/3");
}

#[test]
fn spinc_chain_on_a_chen_base() {
    let v = json(&["--json", "spinc", "Chen(2000000,11000000) # 3*~CP2 # S1xS3", "--deg-K-positive"]);
    let d = &v["descriptor"];
    assert_eq!(int(&d["c1_sq"]), BigInt::from(10_999_997));
    assert_eq!(int(&d["d"]), BigInt::from(1));
    assert_eq!(d["status"], "BClass");
    assert_eq!(d["holonomy_count"], Value::Number(1.into()));
}

#[test]
fn construct_round_trips_and_verifies() {
    let v = json(&["construct", "-e", "0", "-s", "0", "--count", "1", "--json"]);
    assert_eq!(int(&v["params"]["chen_C"]), BigInt::from(1));
    let ws = v["witnesses"].as_array().unwrap();
    assert_eq!(ws.len(), 1);
    let w = &ws[0];
    let expr = parse(w["expr"].as_str().unwrap()).unwrap();
    let inv = connected_sum_invariants(&expr);
    assert_eq!((int(&w["e"]), int(&w["sigma"])), (inv.e().clone(), inv.sigma().clone()));
    assert_eq!((inv.e().clone(), inv.sigma().clone()), (0.into(), 0.into()));
    assert_eq!(int(&w["chen_x"]), BigInt::from(112_669_601));
    assert_eq!(int(&w["chen_C_used"]), BigInt::from(1));

    let p = ChenParams::default();
    let direct = solve(&0.into(), &0.into(), 1, &p).unwrap();
    assert_eq!(serde_json::to_value(&direct[0]).unwrap(), *w);
    assert!(verify(&direct[0], &0.into(), &0.into(), &p).is_valid());
}

#[test]
fn construct_accepts_negative_targets() {
    let v = json(&["--json", "construct", "-e", "-10", "-s", "-4", "--count", "2"]);
    let ws = v["witnesses"].as_array().unwrap();
    assert_eq!(ws.len(), 2);
    assert!(int(&ws[0]["l"]) < int(&ws[1]["l"]));
    assert_eq!(int(&v["sigma"]), BigInt::from(-4));
}

#[test]
fn identical_arguments_give_identical_output() {
    for args in [
        &["construct", "-e", "4", "-s", "2", "--count", "3", "--json"][..],
        &["construct", "-e", "4", "-s", "2", "--count", "2"][..],
        &["obstructions", "Chen(2000000,11000000) # 30*~CP2 # 2*S1xS3", "--json"][..],
    ] {
        assert_eq!(nonein(args), nonein(args));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(nonein(&["invariants", "K3 ## CP2"]).code, EXIT_USAGE);
    assert_eq!(nonein(&["invariants", "Custom(X,1,0,0)"]).code, EXIT_USAGE);
    assert_eq!(nonein(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(nonein(&["construct", "-e", "0", "-s", "0", "--count", "0"]).code, EXIT_USAGE);
    assert_eq!(nonein(&["construct", "-e", "1", "-s", "0"]).code, EXIT_DOMAIN);
    assert_eq!(nonein(&["spinc", "K3 # CP2"]).code, EXIT_DOMAIN);
    assert_eq!(nonein(&["construct", "-e", "0", "-s", "0", "--precision-bits", "8192"]).code, EXIT_USAGE);

    let err = nonein(&["construct", "-e", "1", "-s", "0"]).stderr;
    assert!(err.contains("witness_solver"), "{err}");
    let err = nonein(&["invariants", "K3 ## CP2"]).stderr;
    assert!(err.contains("connected_sum_parser") && err.contains("byte 4"), "{err}");
}

#[test]
fn binary_propagates_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_nonein");
    let ok = Command::new(bin).args(["invariants", "S4"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin).args(["construct", "-e", "3", "-s", "0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_DOMAIN));
    let usage = Command::new(bin).args(["invariants", "CP3"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
}

#[test]
fn geography_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("region.csv");
    let out = nonein(&[
        "geography", "--x-min", "8", "--x-max", "12", "--step", "2", "--format", "csv", "-o",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1], "8,592.44044943820224719,-1392.7426961014560827,false");

    let svg = dir.path().join("region.svg");
    let v = json(&[
        "--json", "geography", "--x-min", "1000000", "--x-max", "3000000", "--step", "50000", "--format", "svg",
        "-o", svg.to_str().unwrap(),
    ]);
    assert_eq!(v["format"], "svg");
    let doc = std::fs::read_to_string(&svg).unwrap();
    let xml = roxmltree::Document::parse(&doc).unwrap();
    assert_eq!(xml.root_element().tag_name().name(), "svg");
    let classes: Vec<&str> = xml.descendants().filter_map(|n| n.attribute("class")).collect();
    for c in ["region", "lower", "upper"] {
        assert!(classes.contains(&c), "missing {c}");
    }

    let bad = nonein(&["geography", "--x-min", "5", "--x-max", "1", "--format", "csv", "-o", csv.to_str().unwrap()]);
    assert_eq!(bad.code, EXIT_USAGE);
}
