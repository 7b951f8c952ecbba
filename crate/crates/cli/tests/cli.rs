use std::process::{Command, Output};

use serde_json::Value;

fn pmech(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmech")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = pmech(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn error(args: &[&str]) -> (i32, Value) {
    let out = pmech(args);
    assert!(!out.status.success());
    (out.status.code().unwrap(), serde_json::from_slice(&out.stderr).expect("json error"))
}

const A: &str = r#"{"schema":"charsum/1","n":1,"atoms":[{"hbar":1,"re":1,"im":0,"x":[0.5],"y":[0]}]}"#;
const B: &str = r#"{"schema":"charsum/1","n":1,"atoms":[{"hbar":1,"re":0.5,"im":0.5,"x":[0],"y":[0.25]}]}"#;
const EMPTY: &str = r#"{"schema":"charsum/1","n":1,"atoms":[]}"#;

#[test]
fn bracket_scan_reports_quadratic_convergence() {
    let r = report(&["bracket", "--a", A, "--b", B, "--hbar", "0.2", "--hbar", "0.1", "--hbar", "0.05", "--hbar", "0"]);
    assert_eq!(r["conventions"], "conventions/1");
    assert_eq!(r["kind"], "charsum");
    assert_eq!(r["results"].as_array().unwrap().len(), 4);
    assert_eq!(r["results"][3]["distance_to_classical"], 0.0);
    let slope = r["hbar_slope"].as_f64().unwrap();
    assert!((slope - 2.0).abs() < 0.05, "{slope}");
}

#[test]
fn bracket_reads_files_and_polynomials() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    std::fs::write(&a, r#"{"schema":"poly/1","n":1,"monomials":[{"q":[3],"p":[0],"re":1}]}"#).unwrap();
    std::fs::write(&b, r#"{"schema":"poly/1","n":1,"monomials":[{"q":[0],"p":[3],"re":1}]}"#).unwrap();
    let r = report(&["bracket", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap(), "--hbar", "0.5", "--hbar", "0"]);
    // the Moyal correction to {q³, p³} is a constant
    let moyal = &r["results"][0]["bracket"]["monomials"];
    let classical = &r["results"][1]["bracket"]["monomials"];
    assert_eq!(classical.as_array().unwrap().len(), 1);
    assert_eq!(moyal.as_array().unwrap().len(), 2);
    assert!(r["results"][0]["distance_to_classical"].as_f64().unwrap() > 0.0);
}

#[test]
fn empty_observable_gives_empty_bracket() {
    let r = report(&["bracket", "--a", EMPTY, "--b", B]);
    assert_eq!(r["results"][0]["size"], 0);
    assert!(r["results"][0]["bracket"]["atoms"].as_array().unwrap().is_empty());
}

#[test]
fn schema_errors_carry_line_context() {
    let (code, e) = error(&["bracket", "--a", "{\"schema\":\"charsum/1\",\n\"n\":1,\n\"atoms\":[}", "--b", B]);
    assert_eq!(code, 1);
    assert_eq!(e["error"]["kind"], "schema");
    let msg = e["error"]["message"].as_str().unwrap();
    assert!(msg.contains("line 3") && msg.contains("| \"atoms\":[}"), "{msg}");
}

#[test]
fn mixed_schemas_are_a_usage_error() {
    let poly = r#"{"schema":"poly/1","n":1,"monomials":[]}"#;
    let (code, e) = error(&["bracket", "--a", A, "--b", poly]);
    assert_eq!((code, e["error"]["kind"].as_str()), (2, Some("usage")));
}

#[test]
fn oscillator_csv_follows_the_classical_flow() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let out = pmech(&["oscillator", "--t-end", "1", "--dt", "0.01", "--record-every", "25", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["t", "p", "q"]);
    let rows: Vec<Vec<f64>> = rdr.records().map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 5);
    for r in &rows {
        // q(t) = q cos t − p sin t for H = ½(q² + p²)
        assert!((r[2] - r[0].cos()).abs() < 1e-9 && (r[1] + r[0].sin()).abs() < 1e-9, "{r:?}");
    }
}

#[test]
fn moyal_oscillator_matches_poisson_for_quadratic_hamiltonian() {
    let cube = r#"{"schema":"poly/1","n":1,"monomials":[{"q":[3],"p":[0],"re":1}]}"#;
    let run = |extra: &[&str]| {
        let mut args = vec!["oscillator", "--observable", cube, "--t-end", "0.5", "--dt", "0.05"];
        args.extend_from_slice(extra);
        report(&args)["trajectory"].as_array().unwrap().last().unwrap()["observable"].clone()
    };
    assert_eq!(run(&["--backend", "poisson"]), run(&["--backend", "moyal", "--hbar", "0.7"]));
}

#[test]
fn zero_time_step_is_rejected() {
    let (code, e) = error(&["oscillator", "--dt", "0"]);
    assert_eq!((code, e["error"]["kind"].as_str()), (2, Some("usage")));
    let (code, e) = error(&["oscillator", "--backend", "moyal", "--hbar", "0"]);
    assert_eq!((code, e["error"]["kind"].as_str()), (1, Some("planck")));
}

#[test]
fn dw_plane_wave_report() {
    let dir = tempfile::tempdir().unwrap();
    let snaps = dir.path().join("q.csv");
    let r = report(&["dw", "--grid", "64", "--t-end", "0.5", "--k", "2", "--snapshots", snaps.to_str().unwrap(), "--snapshot-every", "25"]);
    assert_eq!(r["omega2"], 5.0);
    assert!(r["plane_wave_error"].as_f64().unwrap() < 1e-3);
    assert!(r["energy"]["max_relative_deviation"].as_f64().unwrap() < 1e-6);
    assert_eq!(r["residual"]["c_zero"], true);
    assert!(r["residual"]["q_pairing"].as_f64().unwrap() < 1e-12);
    let mut rdr = csv::Reader::from_path(&snaps).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["t", "x0", "q"]);
    assert_eq!(rdr.records().count(), 3 * 64);
}

#[test]
fn dw_euclidean_growing_mode() {
    let r = report(&["dw", "--signature", "-1,-1", "--grid", "64", "--t-end", "0.2", "--dt", "0.01"]);
    assert_eq!(r["omega2"], -2.0);
    assert!(r["plane_wave_error"].as_f64().unwrap() < 1e-3);
    assert_eq!(r["residual"]["bracket_constant"], -2.0);
}

#[test]
fn dw_zero_preset_stays_zero() {
    let r = report(&["dw", "--preset", "zero", "--grid", "16", "--t-end", "0.1"]);
    assert_eq!(r["energy"]["initial"], 0.0);
    assert_eq!(r["energy"]["final"], 0.0);
    assert!(r["plane_wave_error"].is_null());
}

#[test]
fn dw_rejects_unstable_and_incommensurate_setups() {
    let (code, e) = error(&["dw", "--dt", "1"]);
    assert_eq!((code, e["error"]["kind"].as_str()), (1, Some("unstable")));
    let (code, e) = error(&["dw", "--k", "0.5"]);
    assert_eq!((code, e["error"]["kind"].as_str()), (2, Some("usage")));
    let (_, e) = error(&["dw", "--signature", "+1,0"]);
    assert_ne!(e["error"]["kind"], "internal");
}

#[test]
fn coherent_norms_are_seeded_and_zero_vanishes() {
    let args = ["coherent", "--count", "3", "--xy-points", "21", "--seed", "7"];
    let (r1, r2) = (report(&args), report(&args));
    assert_eq!(r1["coherent"], r2["coherent"]);
    assert_eq!(r1["coherent"].as_array().unwrap().len(), 3);
    assert_eq!(r1["zero_norm"]["scalar"], 0.0);
    let v = r1["vacuum_norm"]["scalar"].as_f64().unwrap();
    assert!((v - 1.0).abs() < 1e-3, "{v}");
    for c in r1["coherent"].as_array().unwrap() {
        assert!((c["norm"]["scalar"].as_f64().unwrap() - v).abs() < 1e-3);
    }
}

#[test]
fn coherent_rejects_mismatched_signature() {
    let (code, e) = error(&["coherent", "--hbar", "1", "--signature", "-1,-1"]);
    assert_eq!((code, e["error"]["kind"].as_str()), (2, Some("usage")));
}

#[test]
fn help_and_version_exit_cleanly() {
    for flag in ["--help", "--version"] {
        let out = pmech(&[flag]);
        assert!(out.status.success());
        assert!(!out.stdout.is_empty());
    }
    let (code, e) = error(&["frobnicate"]);
    assert_eq!((code, e["error"]["kind"].as_str()), (2, Some("usage")));
}
