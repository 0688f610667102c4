use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hellybench"));
    for key in [
        "HELLYBENCH_BETTI_CAP",
        "HELLYBENCH_LERAY_CAP",
        "HELLYBENCH_COMBINATORIAL_CAP",
        "HELLYBENCH_GEOMETRY_DIM_CAP",
        "HELLYBENCH_GEOMETRY_N_CAP",
        "HELLYBENCH_NERVE_CAP",
        "HELLYBENCH_SUITE_LERAY_CAP",
    ] {
        c.env_remove(key);
    }
    c
}

fn run(c: &mut Command) -> Output {
    c.output().expect("binary runs")
}

fn lines(path: &Path) -> Vec<Value> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn construct_then_homology() {
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("k.json");
    let out = run(bin().args(["construct", "k-extremal", "--n", "5", "--t", "2", "--r", "1", "--d", "1", "--out"]).arg(&k));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&k).unwrap()).unwrap();
    assert_eq!(v["predicted"]["f_d"], 6);
    assert_eq!(v["predicted"]["dim"], 1);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);

    let out = run(bin().args(["homology", "--d", "1", "--in"]).arg(&k));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let h: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(h["f_vector"]["counts"][1], 6);
    assert_eq!(h["euler_characteristic"], h["betti"].as_array().unwrap().iter().enumerate()
        .map(|(i, b)| if i % 2 == 0 { b.as_i64().unwrap() } else { -b.as_i64().unwrap() })
        .sum::<i64>());
    assert!(h["certificate"]["verdict"].is_string());
}

#[test]
fn construct_geometric_objects() {
    let out = run(bin().args(["construct", "slab-family", "--n", "5", "--d", "1", "--r", "2", "--seed", "3"]));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 3);
    assert_eq!(v["sets"].as_array().unwrap().len(), 5);
    let rel = &v["sets"][0]["constraints"][0]["rel"];
    assert!(rel == "le" || rel == "eq");
    assert!(v["sets"][0]["constraints"][0]["offset"].as_str().unwrap().contains('/'));
    assert_eq!(v["predicted"]["max_clique"], 3);

    let out = run(bin().args(["construct", "product-family", "--n", "6", "--t", "2", "--d", "1", "--r", "2"]));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["predicted"]["edge_count"], 11);
    assert_eq!(v["bodies"].as_array().unwrap().len(), 6);
}

#[test]
fn construct_rejects_bad_parameters() {
    let out = run(bin().args(["construct", "k-extremal", "--n", "3", "--t", "1", "--r", "2", "--d", "1"]));
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("n > d + r"));
}

#[test]
fn verify_is_reproducible_and_echoes_flags() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.ndjson"), dir.path().join("b.ndjson"));
    for p in [&a, &b] {
        let out = run(bin()
            .args(["verify", "turan", "--n", "4..=6", "--t", "1..=2", "--samples", "2", "--seed", "9", "--out"])
            .arg(p));
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    // the output path differs between the runs and is echoed, nothing else may
    let strip = |s: &[u8], p: &Path| String::from_utf8_lossy(s).replace(&*p.to_string_lossy(), "OUT");
    assert_eq!(strip(&ta, &a), strip(&tb, &b));
    let reports = lines(&a);
    assert!(!reports.is_empty());
    for r in &reports {
        assert_eq!(r["config"]["flags"]["argv"][0], "verify");
        assert_eq!(r["config"]["samples"], 2);
        assert!(r.get("wall_time_ms").is_none());
        assert!(r["ok"].as_bool().unwrap());
    }
    assert!(reports.iter().any(|r| r["role"] == "negative_control"));
}

#[test]
fn verify_skips_explicit_out_of_hypothesis_tuples() {
    let out = run(bin().args(["verify", "leray-intersection", "--n", "4", "--t", "2", "--d", "1", "--r", "0..=3", "--samples", "0", "--no-controls"]));
    assert!(out.status.success());
    let reports: Vec<Value> = String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let verdicts: Vec<(u64, String)> = reports
        .iter()
        .map(|r| (r["params"]["r"].as_u64().unwrap(), r["verdict"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(
        verdicts,
        vec![(0, "skip".into()), (1, "pass".into()), (2, "pass".into()), (3, "skip".into())]
    );
    assert!(reports[0]["messages"][0].as_str().unwrap().contains("r >= (t-1)d"));
}

#[test]
fn cap_overrides_come_from_the_environment() {
    let out = run(bin()
        .env("HELLYBENCH_COMBINATORIAL_CAP", "4")
        .args(["verify", "eckhoff", "--n", "5", "--d", "1", "--r", "1", "--no-geometry", "--no-controls"]));
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["verdict"], "skip");
    assert_eq!(r["config"]["caps"]["combinatorial"], 4);
}

#[test]
fn verify_csv_and_timing() {
    let out = run(bin().args(["verify", "partition", "--x", "5..=6", "--t", "2", "--k", "2", "--csv", "--timing"]));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().unwrap().clone();
    assert_eq!(&header[0], "suite");
    assert!(header.iter().any(|h| h == "params.x"));
    assert!(header.iter().any(|h| h == "measured.min_sum"));
    assert!(header.iter().any(|h| h == "wall_time_ms"));
    assert_eq!(rdr.records().count(), 3);
}

#[test]
fn table_columns() {
    let out = run(bin().args(["table", "g-d", "--n", "5", "--t", "2", "--d", "1", "--r", "0..=2", "--csv"]));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n,t,d,r,g_d,frachel,turan");
    // r = 0 is below (t-1)d, so g_d is undefined there
    assert_eq!(rows[1..], ["5,2,1,1,6,4,6", "5,2,1,2,8,7,6"]);
}

#[test]
fn bad_suite_and_range_are_usage_errors() {
    assert!(!run(bin().args(["verify", "nope"])).status.success());
    assert!(!run(bin().args(["verify", "turan", "--n", "x..3"])).status.success());
}
