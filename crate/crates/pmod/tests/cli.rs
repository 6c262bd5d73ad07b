//! End-to-end checks of the command surface: JSON shapes, CSV
//! projections, exit codes, config preloading and the wire formats.

use std::process::{Command, Output};

fn pmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmod"))
        .args(args)
        .output()
        .expect("run pmod")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn modulus_ring_reports_oracle_and_discrete() {
    let out = pmod(&[
        "modulus", "ring", "--n", "2", "--p", "2", "--r1", "1", "--r2", "2.718281828",
        "--resolution", "64", "--curves", "128", "--no-meta",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["schema"], "pmod/1");
    let oracle = v["result"]["oracle"].as_f64().unwrap();
    let discrete = v["result"]["discrete"].as_f64().unwrap();
    assert!((oracle - 2.0 * std::f64::consts::PI).abs() < 1e-8);
    assert!(((discrete - oracle) / oracle).abs() < 0.05);
}

#[test]
fn modulus_family_empty_is_zero_and_missing_p_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let out = pmod(&[
        "modulus", "family", "--input", empty.to_str().unwrap(), "--p", "1.5", "--no-meta",
    ]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["result"]["value"], 0.0);

    let out = pmod(&["modulus", "family", "--input", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("--p"));
}

#[test]
fn modulus_family_solves_and_exports_density() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("rows.json");
    // Three horizontal segments across [0, 2]×[0, 1].
    let rows: Vec<Vec<[f64; 2]>> = (1..=3)
        .map(|j| vec![[0.0, j as f64 * 0.25], [2.0, j as f64 * 0.25]])
        .collect();
    std::fs::write(&input, serde_json::to_string(&rows).unwrap()).unwrap();
    let rho_path = dir.path().join("rho.bin");
    let out = pmod(&[
        "modulus", "family", "--input", input.to_str().unwrap(), "--p", "2",
        "--resolution", "32", "--rho-out", rho_path.to_str().unwrap(), "--no-meta",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert!(v["result"]["value"].as_f64().unwrap() > 0.0);
    let bytes = std::fs::read(&rho_path).unwrap();
    let grid = pmod::modsolver::DensityGrid::from_binary(&bytes).unwrap();
    assert_eq!(grid.spec.resolution, vec![32, 32]);
}

#[test]
fn criteria_emit_json_verdict_and_csv_evidence() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("fmo.json");
    let out = pmod(&[
        "criteria", "fmo", "--field", "constant:c=3", "--x0", "0", "--n", "2",
        "--no-meta", "--out", out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["result"]["verdict"], "satisfied");
    // CSV lands alongside the JSON report.
    let csv = std::fs::read_to_string(dir.path().join("fmo.csv")).unwrap();
    assert!(csv.starts_with("scale,value"));
    assert!(csv.lines().count() > 10);
}

#[test]
fn criteria_ls_threshold_arithmetic() {
    let out = pmod(&[
        "criteria", "ls", "--field", "constant:c=1", "--n", "2", "--p", "1.5", "--s", "4",
        "--no-meta",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["verdict"], "satisfied");
}

#[test]
fn criteria_unknown_field_is_usage_error() {
    let out = pmod(&["criteria", "fmo", "--field", "mystery:z=1", "--x0", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_verdicts_live_in_json_not_exit_code() {
    let out = pmod(&[
        "verify", "--map", "g2:m=2", "--field", "constant:c=2", "--x0", "0,0",
        "--p", "1.5", "--r1", "1", "--r2", "2", "--eta", "const",
        "--curves", "96", "--resolution", "64", "--no-meta",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["verdict"], "satisfied");
    assert!(v["result"]["margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn probe_csv_columns_and_range_syntax() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("probe.csv");
    let out = pmod(&[
        "probe", "--family", "exp:m=1..6", "--b", "0", "--n", "2",
        "--deltas", "0.5,0.25", "--metric", "euclidean",
        "--csv", csv_path.to_str().unwrap(), "--no-meta",
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("map_id,delta,oscillation"));
    assert_eq!(csv.lines().count(), 1 + 6 * 2);
    // Malformed range.
    let out = pmod(&["probe", "--family", "exp:m=6..1", "--b", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn probe_identity_only_family_oscillation_equals_delta() {
    let out = pmod(&[
        "probe", "--family", "identity", "--b", "0.5,0.5", "--deltas", "0.25,0.125",
        "--no-meta",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    for row in v["result"]["rows"].as_array().unwrap() {
        let delta = row["delta"].as_f64().unwrap();
        let osc = row["oscillation"].as_f64().unwrap();
        assert!((osc - delta).abs() < 1e-9);
    }
}

#[test]
fn bounds_sweep_fmo_monotone_and_volume_row() {
    let out = pmod(&[
        "bounds", "--bound", "distortion-fmo", "--param", "n=2", "--param", "p=1.5",
        "--sweep", "dist=0.001:0.3:8:log", "--no-meta",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    let rows = v["result"]["rows"].as_array().unwrap();
    let vals: Vec<f64> = rows.iter().map(|r| r[1].as_f64().unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[1] > w[0]), "not monotone: {vals:?}");

    let out = pmod(&[
        "bounds", "--bound", "cap-lower-volume", "--param", "n=3", "--param", "p=1.5",
        "--sweep", "m_c=1:1:2", "--no-meta",
    ]);
    let v = json_of(&out);
    let first = v["result"]["rows"][0][1].as_f64().unwrap();
    assert!((first - 6.0 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
}

#[test]
fn bounds_divergent_sweep_decays_with_unit_field() {
    let out = pmod(&[
        "bounds", "--bound", "distortion-divergent", "--param", "n=2",
        "--param", "delta0=0.5", "--field", "constant:c=1",
        "--sweep", "dist=0.0001:0.1:6:log", "--no-meta",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    let rows = v["result"]["rows"].as_array().unwrap();
    let vals: Vec<f64> = rows.iter().map(|r| r[1].as_f64().unwrap()).collect();
    // F = ln(δ0/dist) grows as dist shrinks, so the bound decays toward 0.
    assert!(vals.windows(2).all(|w| w[1] > w[0]));
    assert!(vals[0] < 0.5);
}

#[test]
fn config_preloads_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("defaults.cfg");
    std::fs::write(&cfg, "p=2\nresolution=32\ncurves=48\n").unwrap();
    let out = pmod(&[
        "modulus", "ring", "--config", cfg.to_str().unwrap(), "--n", "2",
        "--r1", "1", "--r2", "2", "--no-meta",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["params"]["resolution"], 32);
    assert_eq!(v["params"]["p"], 2.0);
    // Flag wins over config.
    let out = pmod(&[
        "modulus", "ring", "--config", cfg.to_str().unwrap(), "--n", "2",
        "--r1", "1", "--r2", "2", "--resolution", "16", "--no-meta",
    ]);
    assert_eq!(json_of(&out)["params"]["resolution"], 16);
}

#[test]
fn seeded_commands_are_byte_identical(){
    let run = || {
        pmod(&[
            "modulus", "ring", "--n", "2", "--p", "1.5", "--r1", "1", "--r2", "2",
            "--resolution", "48", "--curves", "64", "--mode", "random-joining",
            "--seed", "9", "--no-meta",
        ])
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn curve_family_json_wire_format() {
    // The wire format is a plain array of vertex lists, bit-exact floats.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fam.json");
    std::fs::write(&path, "[[[1.0,0.0],[2.0,0.0]],[[0.0,1.5],[0.0,2.5]]]").unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let fam = pmod::modsolver::CurveFamily::from_json(&text, "wire").unwrap();
    assert_eq!(fam.len(), 2);
    let back = fam.to_json().unwrap();
    let reread = pmod::modsolver::CurveFamily::from_json(&back, "wire").unwrap();
    assert_eq!(fam, reread);
}
