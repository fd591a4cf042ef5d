//! End-to-end tests of the binary: output formats, determinism, exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sl2cqsp"))
}

fn write_schedule(dir: &Path) -> PathBuf {
    let path = dir.join("phases.json");
    std::fs::write(
        &path,
        r#"{"phases": [0.3, 0.7, 0.1], "delta": 0.6, "eta": 0.4}"#,
    )
    .unwrap();
    path
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn qsp_eval_reports_entries_and_residual() {
    let dir = tempfile::tempdir().unwrap();
    let phases = write_schedule(dir.path());
    let out = bin()
        .args(["qsp-eval", "--phases"])
        .arg(&phases)
        .args(["--w", "0.3+0.2i"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert!(doc["det_residual"].as_f64().unwrap() < 1e-12);

    // w = 0.3 + 0.2i means delta = 0.6, eta = 0.4: same as the file signal
    let out2 = bin()
        .args(["qsp-eval", "--phases"])
        .arg(&phases)
        .output()
        .unwrap();
    assert_eq!(out.stdout, out2.stdout);
}

#[test]
fn output_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let phases = write_schedule(dir.path());
    for subcmd in [
        vec!["qsp-eval", "--phases"],
        vec!["bloch", "--samples", "32", "--phases"],
        vec!["bosonic", "--phases"],
        vec!["lorentz", "--phases"],
    ] {
        let run = || {
            let out = bin().args(&subcmd).arg(&phases).output().unwrap();
            assert!(
                out.status.success(),
                "{}",
                String::from_utf8_lossy(&out.stderr)
            );
            out.stdout
        };
        assert_eq!(run(), run(), "nondeterministic output for {subcmd:?}");
    }
}

#[test]
#[allow(clippy::approx_constant)] // the literal pi/4 string is the CLI input under test
fn dual_map_quarter_pi() {
    let out = bin()
        .args(["dual-map", "--theta", "0.7853981633974483"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let tt = doc["theta_tilde"].as_array().unwrap();
    assert!((tt[0].as_f64().unwrap() + 0.7853981633974483).abs() < 1e-12);
    assert!(tt[1].as_f64().unwrap().abs() < 1e-12);
    assert!(doc["residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn dual_map_with_params_emits_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("floquet.json");
    std::fs::write(
        &params,
        r#"{"n_sites": 3, "theta": 0.5, "alphas": [0.1, 0.2, 0.3], "phis": [0.4, -0.2, 0.9], "boundary": "periodic"}"#,
    )
    .unwrap();
    let out = bin()
        .args(["dual-map", "--params"])
        .arg(&params)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["sequence_entries"].as_array().unwrap().len(), 4);
    assert!(doc["sequence_det_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn exit_codes_follow_error_class() {
    // pole: numerical/domain error -> 2
    let pole = bin().args(["dual-map", "--theta", "0.0"]).output().unwrap();
    assert_eq!(pole.status.code(), Some(2));
    assert!(!pole.stderr.is_empty());

    // missing file -> 1
    let missing = bin()
        .args(["qsp-eval", "--phases", "/nonexistent/no.json"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));

    // malformed complex literal -> 1
    let dir = tempfile::tempdir().unwrap();
    let phases = write_schedule(dir.path());
    let bad = bin()
        .args(["qsp-eval", "--phases"])
        .arg(&phases)
        .args(["--w", "topaz"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));

    // unknown flag -> 1 (clap errors are argument errors)
    let unknown = bin().args(["qsp-eval", "--frobnicate"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(1));

    // unknown key in an input document -> 1
    let extra = dir.path().join("extra.json");
    std::fs::write(
        &extra,
        r#"{"phases": [0.1], "delta": 0.0, "eta": 0.0, "comment": "nope"}"#,
    )
    .unwrap();
    let rejected = bin()
        .args(["qsp-eval", "--phases"])
        .arg(&extra)
        .output()
        .unwrap();
    assert_eq!(rejected.status.code(), Some(1));

    // --help exits 0
    let help = bin().arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn tolerance_env_gates_self_checks() {
    let dir = tempfile::tempdir().unwrap();
    let phases = write_schedule(dir.path());
    let out = bin()
        .args(["qsp-poly", "--phases"])
        .arg(&phases)
        .env("SL2CQSP_TOL", "1e-18")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let bad_env = bin()
        .args(["qsp-poly", "--phases"])
        .arg(&phases)
        .env("SL2CQSP_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(1));
}

#[test]
fn qsp_poly_reports_identity_residual() {
    let dir = tempfile::tempdir().unwrap();
    let phases = write_schedule(dir.path());
    let out = bin()
        .args(["qsp-poly", "--phases"])
        .arg(&phases)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["degree"].as_u64().unwrap(), 2);
    assert_eq!(doc["P"].as_array().unwrap().len(), 3);
    assert!(doc["determinant_identity_residual"].as_f64().unwrap() < 1e-9);
    assert!(doc["holdout_rel_error"].as_f64().unwrap() < 1e-9);
    assert!(doc["parity"]["Q"]["even_norm"].is_f64());
}

#[test]
fn lorentz_csv_shape() {
    let dir = tempfile::tempdir().unwrap();
    let phases = write_schedule(dir.path());
    let out = bin()
        .args(["lorentz", "--phases"])
        .arg(&phases)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "x0,x1,x2,x3");
    for line in &lines[1..] {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(fields.len(), 4);
    }
}

#[test]
fn bloch_csv_row_count_and_unit_weights_for_rotation() {
    let dir = tempfile::tempdir().unwrap();
    let phases = dir.path().join("rot.json");
    std::fs::write(&phases, r#"{"phases": [0.5], "delta": 0.0, "eta": 0.0}"#).unwrap();
    let out = bin()
        .args(["bloch", "--samples", "16", "--phases"])
        .arg(&phases)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 17);
    for line in &lines[1..] {
        let weight: f64 = line.split(',').next_back().unwrap().parse().unwrap();
        assert!((weight - 1.0).abs() < 1e-12);
    }
}

#[test]
fn bosonic_matrix_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let phases = write_schedule(dir.path());
    let out = bin()
        .args(["bosonic", "--phases"])
        .arg(&phases)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert_eq!(text.trim_end().lines().count(), 5);

    // mild angles keep truncation leakage below the oracle gate
    let mild = dir.path().join("mild.json");
    std::fs::write(
        &mild,
        r#"{"phases": [0.1, -0.15], "delta": 0.2, "eta": 0.2}"#,
    )
    .unwrap();
    let oracle = bin()
        .args([
            "bosonic",
            "--oracle",
            "--n-max",
            "24",
            "--occupation",
            "4",
            "--phases",
        ])
        .arg(&mild)
        .output()
        .unwrap();
    assert!(
        oracle.status.success(),
        "{}",
        String::from_utf8_lossy(&oracle.stderr)
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&oracle)).unwrap();
    assert_eq!(doc["n_max"].as_u64().unwrap(), 24);
    assert!(doc["residual"].as_f64().unwrap() < 1e-6);
}

#[test]
fn nlft_grid_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("nlft.json");
    std::fs::write(&input, r#"{"psi": [0.3, -0.2], "delta": 0.5, "eta": 0.2}"#).unwrap();
    // default: single point at the file's signal
    let single = bin()
        .args(["nlft", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(single.status.success());
    let text = stdout_str(&single);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        lines[0],
        "re_w,im_w,re_A,im_A,re_B,im_B,re_C,im_C,re_D,im_D"
    );
    let fields: Vec<f64> = lines[1].split(',').map(|f| f.parse().unwrap()).collect();
    assert!((fields[0] - 0.25).abs() < 1e-15 && (fields[1] - 0.1).abs() < 1e-15);
    // A D - B C = 1
    let a = fields[2] * fields[8] - fields[3] * fields[9];
    let b = fields[4] * fields[6] - fields[5] * fields[7];
    assert!((a - b - 1.0).abs() < 1e-10);

    let grid = bin()
        .args([
            "nlft",
            "--re-min",
            "-0.5",
            "--re-max",
            "0.5",
            "--re-steps",
            "5",
            "--input",
        ])
        .arg(&input)
        .output()
        .unwrap();
    assert!(grid.status.success());
    assert_eq!(stdout_str(&grid).trim_end().lines().count(), 6);

    // pole angle is a domain error -> 2
    let pole = dir.path().join("pole.json");
    std::fs::write(
        &pole,
        r#"{"psi": [1.5707963267948966], "delta": 0.0, "eta": 0.0}"#,
    )
    .unwrap();
    let out = bin().args(["nlft", "--input"]).arg(&pole).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zs_residual_table_shows_second_order() {
    let dir = tempfile::tempdir().unwrap();
    let wave = dir.path().join("kdv.csv");
    let k = 0.5f64;
    let (nx, nt) = (161usize, 17usize);
    let mut text = String::from("x,t,re_f,im_f\n");
    for it in 0..nt {
        let t = 0.5 * it as f64 / (nt - 1) as f64;
        for ix in 0..nx {
            let x = -12.0 + 24.0 * ix as f64 / (nx - 1) as f64;
            let u = k * (x + 4.0 * k * k * t);
            let f = 12.0 * k * k / (u.cosh() * u.cosh());
            text.push_str(&format!("{x:.17e},{t:.17e},{f:.17e},0\n"));
        }
    }
    std::fs::write(&wave, text).unwrap();
    let out = bin()
        .args([
            "zs-residual",
            "--equation",
            "kdv",
            "--levels",
            "3",
            "--wave",
        ])
        .arg(&wave)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "h,residual,ratio");
    assert_eq!(lines.len(), 4);
    // coarsest row has an empty ratio; later rows show ~4x decay
    assert!(lines[1].ends_with(','));
    for line in &lines[2..] {
        let ratio: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!((2.5..6.0).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn moebius_flow_handles_infinity_start() {
    let dir = tempfile::tempdir().unwrap();
    let phases = write_schedule(dir.path());
    let out = bin()
        .args(["moebius-flow", "--z0", "inf", "--phases"])
        .arg(&phases)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "step,re_z,im_z,is_infinity");
    assert_eq!(lines.len(), 6); // 2 * 3 - 1 factors
    assert!(lines[1].starts_with("1,,,1")); // phase factor fixes infinity
}

#[test]
fn calibrate_emits_descriptor_and_table() {
    let out = bin()
        .args(["calibrate", "--max-d", "3", "--trials", "3"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["descriptor"]["index_range"], "closed");
    assert_eq!(doc["descriptor"]["phase_scale"], "2w");
    assert_eq!(doc["descriptor"]["outer_power"], "d*w");
    assert_eq!(doc["descriptor"]["hadamard"], true);
    assert_eq!(doc["descriptor"]["sign"], 1);
    assert_eq!(doc["residual_table"].as_array().unwrap().len(), 48);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let phases = write_schedule(dir.path());
    let file = dir.path().join("lambda.csv");
    let to_stdout = bin()
        .args(["lorentz", "--phases"])
        .arg(&phases)
        .output()
        .unwrap();
    let to_file = bin()
        .args(["lorentz", "--phases"])
        .arg(&phases)
        .arg("--output")
        .arg(&file)
        .output()
        .unwrap();
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&file).unwrap(), to_stdout.stdout);
}
