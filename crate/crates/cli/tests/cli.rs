use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn gpat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_cells(text: &str) -> BTreeSet<(String, String, String)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1].to_string(), f[2].to_string())
        })
        .collect()
}

#[test]
fn narayana_rows_from_closed_form() {
    let o = gpat(&[
        "table",
        "--pattern",
        "12",
        "--nmax",
        "3",
        "--method",
        "closed",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n,r,count\n"));
    for row in ["3,0,1", "3,1,3", "3,2,1"] {
        assert!(text.lines().any(|l| l == row), "{row}");
    }
}

#[test]
fn enumeration_table_rows_are_sorted() {
    let o = gpat(&[
        "table",
        "--pattern",
        "231",
        "--nmax",
        "4",
        "--rmax",
        "2",
        "--method",
        "bf",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "4,0,8"));
    assert!(text.lines().any(|l| l == "4,1,6"));
    let keys: Vec<(usize, usize)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<usize> = l.split(',').take(2).map(|v| v.parse().unwrap()).collect();
            (f[0], f[1])
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(keys.len(), 5 * 3);
}

#[test]
fn restricted_table_via_equation() {
    let o = gpat(&[
        "table", "--tau", "123", "--phi", "231", "--nmax", "4", "--rmax", "2", "--method", "feq",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "4,0,4"));
    assert!(text.lines().any(|l| l == "4,1,5"));
}

#[test]
fn csv_and_json_carry_the_same_cells() {
    let base = ["table", "--pattern", "1-23", "--nmax", "6", "--rmax", "2"];
    let csv = gpat(&base);
    let json = gpat(&[&base[..], &["--format", "json"]].concat());
    assert_eq!(json.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&json.stdout).unwrap();
    for key in [
        "pattern",
        "restriction",
        "n_max",
        "r_max",
        "cells",
        "truncated_rows",
    ] {
        assert!(doc.get(key).is_some(), "{key}");
    }
    assert_eq!(doc["pattern"], "1-23");
    assert_eq!(doc["n_max"], "6");
    let from_json: BTreeSet<(String, String, String)> = doc["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let s = |k: &str| c[k].as_str().unwrap().to_string();
            (s("n"), s("r"), s("count"))
        })
        .collect();
    assert_eq!(from_json, csv_cells(&stdout(&csv)));
    // 1-23 reaches three occurrences at n = 4
    let truncated: Vec<&str> = doc["truncated_rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(truncated, ["4", "5", "6"]);
}

#[test]
fn generating_function_table_matches_enumeration() {
    for method in ["cf", "closed"] {
        let gf = gpat(&[
            "table",
            "--pattern",
            "12-3",
            "--nmax",
            "7",
            "--rmax",
            "1",
            "--method",
            method,
        ]);
        let bf = gpat(&["table", "--pattern", "12-3", "--nmax", "7", "--rmax", "1"]);
        assert_eq!(gf.status.code(), Some(0), "{method}");
        assert_eq!(csv_cells(&stdout(&gf)), csv_cells(&stdout(&bf)), "{method}");
    }
}

#[test]
fn series_cells() {
    let o = gpat(&[
        "series", "--name", "F123", "--route", "feq", "--xdeg", "4", "--ydeg", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "4,2,1"));
    let o = gpat(&[
        "series", "--name", "F12k", "--k", "3", "--route", "cf", "--xdeg", "3", "--ydeg", "2",
    ]);
    assert!(stdout(&o).lines().any(|l| l == "3,1,1"));
    let o = gpat(&[
        "series", "--name", "F12", "--route", "surd", "--xdeg", "3", "--ydeg", "2",
    ]);
    assert!(stdout(&o).lines().any(|l| l == "3,1,3"));
}

#[test]
fn usage_errors_exit_two() {
    let o = gpat(&["series", "--name", "NOPE"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("G123_231"));
    assert_eq!(gpat(&["verify", "--name", "NOPE"]).status.code(), Some(2));
    assert_eq!(gpat(&["table", "--pattern", "12-2"]).status.code(), Some(2));
    assert_eq!(
        gpat(&["table", "--pattern", "213", "--method", "cf"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gpat(&["table", "--pattern", "1-3", "--method", "feq"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gpat(&["table", "--pattern", "12", "--nmax", "40"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(gpat(&["verify"]).status.code(), Some(2));
    assert_eq!(gpat(&["bogus"]).status.code(), Some(2));
}

#[test]
fn verification_exit_codes() {
    let o = gpat(&["verify", "--all", "--nmax", "8", "--rmax", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = gpat(&["verify", "--name", "G123_231", "--nmax", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("annex-mismatch,G123_231,partial,n=4 r=1: printed=9 bf=5"));
    let o = gpat(&[
        "verify", "--name", "F231", "--nmax", "6", "--format", "json",
    ]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["reports"][0]["status"], "agree");
}

#[test]
fn catalog_listing() {
    let o = gpat(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text
        .lines()
        .any(|l| l.starts_with("F12k(3),12-3,,cf;closed,")));
    assert!(text
        .lines()
        .any(|l| l.starts_with("F321,321,,feq;surd,F123,")));
    assert!(text
        .lines()
        .any(|l| l.starts_with("g123_231_printed,") && l.contains("verification-only")));
    let o = gpat(&["catalog", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc["names"].as_array().unwrap().len() >= 18);
}
