use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fockres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockres"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(p).expect("golden file")
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).expect("utf-8 output")
}

#[test]
fn csv_headers_match_golden() {
    for line in golden("headers.tsv").lines() {
        let (cmd, header) = line.split_once('\t').expect("tab-separated");
        let args: Vec<&str> = cmd.split_whitespace().collect();
        let o = fockres(&args);
        assert!(
            o.status.success(),
            "{cmd}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let first = stdout(&o).split("\r\n").next().unwrap();
        assert_eq!(first, header, "{cmd}");
    }
}

#[test]
fn vacuum_state_is_a_number_state() {
    let o = fockres(&["state", "pasvs", "--zeta", "0", "--m", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("state_pasvs_vacuum.csv"));
}

#[test]
fn squeezed_state_rows_are_normalized() {
    let o = fockres(&["state", "pasvs", "--zeta", "0.5", "--m", "2"]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let mut sum = 0.0;
    let mut tail = f64::NAN;
    for rec in r.records() {
        let rec = rec.unwrap();
        let abs2: f64 = rec[3].parse().unwrap();
        if &rec[0] == "tail" {
            tail = abs2;
        } else {
            let n: usize = rec[0].parse().unwrap();
            assert!(n >= 2 && n.is_multiple_of(2));
            sum += abs2;
        }
    }
    assert!((1.0 - 1e-9..=1.0 + 1e-15).contains(&sum), "{sum}");
    assert!((0.0..1e-9).contains(&tail));
}

#[test]
fn pacsc_state_matches_hand_computed_coefficients() {
    // λ = 2, μ = 0: even coherent state with one photon added; only odd n.
    let o = fockres(&[
        "state", "pacsc", "--lambda", "2", "--mu", "0", "--m", "1", "--z", "0.8",
    ]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    // a†|z,0⟩ ∝ Σ_k z^k √(2k+1) / √((2k)!) |2k+1⟩
    let raw: Vec<f64> = (0..40u32)
        .map(|k| {
            let fact: f64 = (1..=2 * k).map(f64::from).product();
            0.8f64.powi(k as i32) * f64::from(2 * k + 1).sqrt() / fact.sqrt()
        })
        .collect();
    let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
    for rec in r.records() {
        let rec = rec.unwrap();
        if &rec[0] == "tail" {
            continue;
        }
        let n: usize = rec[0].parse().unwrap();
        assert_eq!(n % 2, 1);
        let re: f64 = rec[1].parse().unwrap();
        assert!((re - raw[(n - 1) / 2] / norm).abs() < 1e-14, "n = {n}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["verify", "overlaps", "--max-index", "4"][..],
        &["verify", "unity", "--dim", "6"][..],
        &["weights", "pacsc", "--lambda", "3", "--mu", "2"][..],
    ] {
        let a = fockres(args);
        let b = fockres(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn verify_defaults_to_json_envelope() {
    let o = fockres(&[
        "verify", "moments", "--family", "pasvs", "--m", "3", "--kmax", "8", "--tol", "1e-8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "verify moments");
    assert_eq!(v["pass"], true);
    assert_eq!(v["parameters"]["tol"], 1e-8);
    assert!(v["max_error"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 9);
    assert!(v["tool_version"].as_str().unwrap().starts_with("fockres "));
}

#[test]
fn carleman_ratio_below_bound() {
    let o = fockres(&["verify", "carleman", "--m", "2", "--k", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let ratio = v["results"]["rows"][0][3].as_f64().unwrap();
    assert!(ratio.abs() < 0.01 && ratio > 0.0);
}

#[test]
fn discrete_error_column_decreases() {
    let o = fockres(&[
        "verify",
        "discrete",
        "--zeta",
        "0.3",
        "--cutoffs",
        "10,20,40",
        "--dim",
        "8",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let devs: Vec<f64> = r
        .records()
        .map(|rec| rec.unwrap()[1].parse().unwrap())
        .collect();
    assert_eq!(devs.len(), 3);
    assert!(devs[0] > devs[1] && devs[1] > devs[2]);
}

#[test]
fn failed_verification_exits_one_and_names_worst_entry() {
    let o = fockres(&[
        "verify", "carleman", "--m", "1,2", "--k", "10", "--tol", "0.01",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("verification failed") && err.contains("worst entry: m="),
        "{err}"
    );
    // the report is still written
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["state", "pasvs", "--zeta", "1.5"][..],
        &["state", "pasvs", "--zeta", "0.5@"][..],
        &["state", "csc", "--z", "1", "--lambda", "2", "--mu", "2"][..],
        &["weights", "--grid", "1"][..],
        &["verify", "moments", "--tol", "-1"][..],
        &["verify", "discrete", "--zeta", "0.9"][..],
        &["nonsense"][..],
        &["state", "pasvs", "--format", "xml"][..],
    ] {
        let o = fockres(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(!err.trim().is_empty(), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn out_flag_writes_file_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.json");
    let p = path.to_str().unwrap();
    let o = fockres(&[
        "state", "sns", "--zeta", "0.4@0.5", "--m", "1", "--format", "json", "--out", p,
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "state");
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn overlap_forms_agree() {
    let o = fockres(&[
        "overlap", "pasops", "--xi", "0.6@-3", "--n", "3", "--zeta", "0.4@3", "--m", "5",
        "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 3);
    assert!(v["max_error"].as_f64().unwrap() < 1e-9);
}

#[test]
fn weights_grid_reproduces_curve_shape() {
    let o = fockres(&["weights", "--grid", "100"]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<Vec<f64>> = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 100);
    assert_eq!(rows[0][0], 1e-4);
    assert!((rows[0][1] - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-4);
    assert!(rows.iter().all(|r| r[1..].iter().all(|&h| h > 0.0)));
    assert!(rows.windows(2).all(|w| w[1][2] < w[0][2]), "h_2 decreasing");
    assert!(rows.windows(2).all(|w| w[1][1] > w[0][1]), "h_1 increasing");
}
