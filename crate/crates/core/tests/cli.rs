use std::process::{Command, Output};

use serde_json::Value;

fn sqdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqdist"))
        .args(args)
        .env("SQDIST_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn spectrum_json() {
    let out = sqdist(&["spectrum", "2,2,1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["exact"][0]["value"], "-4");
    assert_eq!(v["exact"][0]["mult"], 2);
    let isolated: Vec<f64> = v["isolated"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_f64().unwrap())
        .collect();
    let want = [6.60555, 2.0, -0.60555];
    let mut all: Vec<f64> = isolated.clone();
    for e in v["exact"].as_array().unwrap() {
        if e["value"] != "-4" {
            all.push(e["value"].as_str().unwrap().parse().unwrap());
        }
    }
    all.sort_by(|a, b| b.total_cmp(a));
    for (g, w) in all.iter().zip(want) {
        assert!((g - w).abs() < 1e-5, "{all:?}");
    }
}

#[test]
fn energy_exact_output() {
    let out = sqdist(&["energy", "3,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"integer_part":"24","theta":null,"value":24.0}"#
    );
}

#[test]
fn verify_reports_no_failures() {
    let out = sqdist(&["verify", "--nmax", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(v["summary"].as_str().unwrap().ends_with("0 failures"));
    assert_eq!(v["sweep"]["failures"], 0);
}

#[test]
fn inertia_radius_charpoly() {
    let v = stdout_json(&sqdist(&["inertia", "2,1,1"]));
    assert_eq!(
        (
            v["n_plus"].as_u64(),
            v["n_zero"].as_u64(),
            v["n_minus"].as_u64()
        ),
        (Some(1), Some(1), Some(2))
    );

    let v = stdout_json(&sqdist(&["radius", "3,3"]));
    let r = v["value"].as_f64().unwrap();
    assert!((r - 11.0).abs() < 1e-10, "{r}");

    let v = stdout_json(&sqdist(&["charpoly", "1,1"]));
    assert_eq!(v["expanded"]["coeffs"], serde_json::json!(["-1", "0", "1"]));
    assert_eq!(v["det"], "-1");
}

#[test]
fn scans_and_chain() {
    let out = sqdist(&["scan-energy", "6", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["energy_max"][0]["parts"], serde_json::json!([4, 1, 1]));
    assert_eq!(v["violations"], serde_json::json!([]));

    let out = sqdist(&["scan-radius", "6", "3", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("partition,energy,radius,inertia"));
    assert_eq!(text.lines().count(), 4);

    let out = sqdist(&["scan-h", "17", "10", "--h", "6"]);
    assert_eq!(out.status.code(), Some(0));

    let out = sqdist(&["chain", "4,1,1", "2,2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["links"].as_array().unwrap().len(), 3);
    assert_eq!(
        v["links"][1]["partition"]["parts"],
        serde_json::json!([3, 2, 1])
    );
}

#[test]
fn exit_codes_and_streams() {
    let out = sqdist(&["energy", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("at least two parts"));

    let out = sqdist(&["chain", "2,2,2", "4,1,1"]);
    assert_eq!(out.status.code(), Some(1));

    let out = sqdist(&["scan-h", "10", "3", "--h", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let out = sqdist(&["spectrum"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8(out.stderr).unwrap().contains("Usage"));

    let out = sqdist(&["verify", "--nmax", "4", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn deterministic_output() {
    let a = sqdist(&["scan-energy", "9", "4"]);
    let b = Command::new(env!("CARGO_BIN_EXE_sqdist"))
        .args(["scan-energy", "9", "4"])
        .env("SQDIST_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}
