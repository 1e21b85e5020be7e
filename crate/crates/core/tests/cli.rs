mod common;

use common::run_cli;
use serde_json::Value;

#[test]
fn family_laguerre_table() {
    let (code, out, _) = run_cli(&["family", "--kind", "laguerre", "--d", "2", "--N", "4"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[3].ends_with("r^4-22r^3+138r^2-288r+144"), "{}", lines[3]);
}

#[test]
fn family_legendre_row() {
    let (code, out, _) = run_cli(&["family", "--kind", "legendre", "--d", "3", "--N", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 4r-3");
}

#[test]
fn family_json_uses_fractions() {
    let (code, out, _) = run_cli(&[
        "family", "--ortho", "legendre:d=2", "--constraint", "legendre:d=2", "--N", "2", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let text = v.to_string();
    assert!(text.contains("\"3/10\"") && text.contains("\"-6/5\""), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run_cli(&["family", "--kind", "laguerre", "--N", "0"]).0, 2);
    assert_eq!(run_cli(&["family", "--kind", "laguerre", "--N", "3", "--bogus"]).0, 2);
    assert_eq!(run_cli(&["family", "--ortho", "gauss:a=0", "--constraint", "gauss:a=1", "--N", "2"]).0, 2);
    assert_eq!(run_cli(&["kernel", "--case", "laguerre", "--x", "1", "--N", "0", "--rmax", "2"]).0, 2);
    assert_eq!(run_cli(&["nonsense"]).0, 2);
    let (code, _, err) = run_cli(&["centrifuge", "--K", "0"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}

#[test]
fn verify_default_passes() {
    let (code, out, err) = run_cli(&["verify"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["all_zero"], Value::Bool(true));
    assert_eq!(v["families"].as_array().unwrap().len(), 6);
    assert_eq!(v["decomposition"][0]["N"], 30);
}

#[test]
fn verify_detects_corruption() {
    let (code, out, err) = run_cli(&["verify", "--d", "1", "--N", "5", "--projector-N", "3", "--corrupt", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("verification failed"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["all_zero"], Value::Bool(false));
    assert!(!v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn verify_numeric_family() {
    let (code, out, err) = run_cli(&[
        "verify", "--d", "1", "--N", "3", "--projector-N", "3",
        "--ortho", "numeric:p=1,c=2,lo=0,hi=1,order=64",
        "--constraint", "numeric:p=1,c=1,lo=0,hi=1,order=64",
    ]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["custom"]["orthogonality_residual"].as_f64().unwrap() < 1e-10);

    let (code, _, err) = run_cli(&[
        "verify", "--d", "1", "--N", "3", "--projector-N", "3",
        "--ortho", "numeric:p=1,c=2,lo=0,hi=1,order=4",
        "--constraint", "numeric:p=1,c=1,lo=0,hi=1,order=4",
    ]);
    assert_eq!(code, 1);
    assert!(err.to_lowercase().contains("quadrature"), "{err}");
}

#[test]
fn kernel_csv_columns() {
    let (code, out, _) = run_cli(&[
        "kernel", "--case", "laguerre", "--x", "2", "--N", "50,100,150", "--rmax", "40",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "r,v_50,v_100,v_150");
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 801);
    assert!(rows.iter().all(|r| r.len() == 4));
    let at2 = rows.iter().find(|r| (r[0] - 2.0).abs() < 1e-9).unwrap();
    assert!(at2[1] < at2[2] && at2[2] < at2[3]);
}

#[test]
fn subtractor_csv_single_column() {
    let (code, out, _) = run_cli(&[
        "subtractor", "--case", "hermite", "--a", "2", "--x", "0", "--N", "50", "--rmax", "3", "--step", "0.5",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "r,value");
    assert_eq!(lines.len(), 14);
    assert!(lines[1].starts_with("-3,"));
}

#[test]
fn trajectory_row_matches_quoted_values() {
    let (code, out, err) = run_cli(&["toy", "trajectory", "--m", "6"]);
    assert_eq!(code, 0, "{err}");
    let mut lines = out.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("lambda,drho_1,"));
    let row: Vec<f64> = lines
        .map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect::<Vec<_>>())
        .find(|r| (r[0] - 2.0).abs() < 1e-9)
        .unwrap();
    let want = [-0.013, -0.041, -0.376, 0.008, 0.040];
    for (k, w) in want.iter().enumerate() {
        assert!((row[2 * k + 2] - w).abs() < 0.003);
    }
}

#[test]
fn positivity_and_flexibility_outputs() {
    let (code, out, _) = run_cli(&["toy", "positivity", "--rays", "16"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "dR2,dR4,min_residual");
    assert_eq!(lines.len(), 17);

    let (code, out, _) = run_cli(&["toy", "flexibility", "--N", "4", "--B", "40"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let f = v["F"].as_array().unwrap();
    assert_eq!(f.len(), 4);
    assert_eq!(f[1][3], f[3][1]);
    assert!(f[1][1].as_f64().unwrap() < 0.0);
}

#[test]
fn centrifuge_json() {
    let (code, out, _) = run_cli(&["centrifuge", "--K", "1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["residual"].as_f64().unwrap().abs() < 1e-12);
    let (code, out, _) = run_cli(&["centrifuge", "--K", "-3", "--order", "32"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 32);
}

#[test]
fn output_is_deterministic() {
    let cmds: [&[&str]; 4] = [
        &["family", "--kind", "laguerre", "--d", "3", "--N", "8", "--format", "json"],
        &["kernel", "--case", "hermite", "--x", "0.5", "--N", "12", "--rmax", "4"],
        &["toy", "flexibility", "--N", "6", "--B", "30"],
        &["centrifuge", "--K", "2.5"],
    ];
    for c in cmds {
        let a = run_cli(c);
        let b = run_cli(c);
        assert_eq!(a.0, 0);
        assert_eq!(a, b);
    }
}

#[test]
fn file_output_is_written_whole() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let meta = dir.path().join("meta.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = run_cli(&[
        "toy", "trajectory", "--m", "4", "--lambda-max", "0.2", "--B", "40", "--out", p,
        "--meta", meta.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.ends_with('\n') && !text.contains('\r'));
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&meta).unwrap()).unwrap();
    assert_eq!(m["scale_factors"][3], 1.0);
    // no temp files left beside the outputs
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}
