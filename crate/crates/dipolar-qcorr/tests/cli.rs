//! End-to-end tests of the binary: exit-code contract, file formats,
//! round-trips and figure-preset properties.

use dipolar_qcorr::qcorrelations::concurrence_at;
use dipolar_qcorr::spinmodel::SimParams;
use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dipolar-qcorr"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let body = std::fs::read_to_string(path).expect("csv readable");
    let mut lines = body.lines();
    let header: Vec<String> = lines
        .next()
        .expect("header row")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse::<f64>().expect("float cell")).collect())
        .collect();
    (header, rows)
}

#[test]
fn exit_code_contract() {
    // 0: success
    assert_eq!(code(&run(&["verify", "--quick"])), 0);
    // 1: verification failure (injected fault)
    assert_eq!(code(&run(&["verify", "--quick", "--perturb", "1e-3"])), 1);
    // 2: usage errors, both clap-level and domain-level
    assert_eq!(code(&run(&["sweep", "--quantity", "concurrence"])), 2);
    assert_eq!(
        code(&run(&[
            "sweep", "--quantity", "concurrence", "--abscissa", "time", "--t-max", "8",
            "--points", "1",
        ])),
        2
    );
    assert_eq!(code(&run(&["evolve", "--beta", "-1", "--t", "1"])), 2);
    // 3: numeric failure (RK4 blow-up at an absurd stiffness/step combination)
    assert_eq!(
        code(&run(&[
            "evolve", "--beta", "1", "--g", "1e8", "--t", "1", "--method", "numeric",
            "--dt", "0.01",
        ])),
        3
    );
    // 4: I/O failure
    assert_eq!(
        code(&run(&[
            "sweep", "--quantity", "concurrence", "--abscissa", "time", "--t-max", "4",
            "--output", "/nonexistent-dir/out.csv",
        ])),
        4
    );
}

#[test]
fn evolve_dumps_the_infinite_temperature_state() {
    let out = run(&["evolve", "--beta", "0", "--g", "1", "--t", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches("2.5000000000000000e-1").count(), 4);
    assert!(!text.contains("max |numeric - analytic|"));
}

#[test]
fn evolve_numeric_comparison_footer() {
    let out = run(&[
        "evolve", "--beta", "1.5", "--g", "0.5", "--t", "2", "--method", "numeric",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let line = text
        .lines()
        .find(|l| l.starts_with("max |numeric - analytic|"))
        .expect("comparison footer");
    let err: f64 = line.rsplit('=').next().unwrap().trim().parse().unwrap();
    assert!(err < 1e-8, "footer error {err:e}");
}

#[test]
fn sweep_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let out = run(&[
        "sweep", "--quantity", "concurrence", "--abscissa", "time", "--beta", "1.5",
        "--g", "0.7", "--t-max", "4", "--points", "41",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let (header, rows) = read_csv(&path);
    assert_eq!(header, ["abscissa", "value"]);
    assert_eq!(rows.len(), 41);
    for row in &rows {
        let p = SimParams::new(1.5, 0.7, row[0]).unwrap();
        assert!((concurrence_at(&p) - row[1]).abs() < 1e-12);
    }
    // sidecar metadata echoes the parameters
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("c.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["spec"]["g"], 0.7);
    assert_eq!(meta["spec"]["grid"]["points"], 41);
}

#[test]
fn sweep_fan_out_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let out = run(&[
        "sweep", "--quantity", "concurrence", "--abscissa", "time", "--beta", "1.5",
        "--g", "0,1", "--t-max", "4", "--points", "11",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("c_g0.csv").exists());
    assert!(dir.path().join("c_g1.csv").exists());
    assert!(!path.exists());

    let jpath = dir.path().join("c.json");
    let out = run(&[
        "sweep", "--quantity", "concurrence", "--abscissa", "time", "--beta", "1.5",
        "--t-max", "4", "--points", "11", "--format", "json",
        "--output", jpath.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&jpath).unwrap()).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 11);
}

#[test]
fn temperature_sweep_has_t_star_and_positive_discord() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    let out = run(&[
        "sweep", "--quantity", "discord", "--abscissa", "temperature", "--millikelvin",
        "--start", "5", "--stop", "100", "--points", "8", "--g", "0",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let (header, rows) = read_csv(&path);
    assert_eq!(header, ["abscissa", "value", "t_star"]);
    assert_eq!(rows.len(), 8);
    for row in &rows {
        assert!(row[0] >= 0.005 && row[0] <= 0.1); // kelvin in the file
        assert!(row[1] > 0.0, "discord must stay positive, got {}", row[1]);
    }
}

#[test]
fn figures_are_byte_stable_and_shaped() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = run(&["figures", "--output", dir.path().to_str().unwrap()]);
        assert_eq!(code(&out), 0);
    }
    for name in ["fig1", "fig2", "fig3", "fig4"] {
        for ext in ["csv", "plt"] {
            let f = format!("{name}.{ext}");
            let a = std::fs::read(dir_a.path().join(&f)).unwrap();
            let b = std::fs::read(dir_b.path().join(&f)).unwrap();
            assert_eq!(a, b, "{f} differs between runs");
        }
    }

    let (h1, fig1) = read_csv(&dir_a.path().join("fig1.csv"));
    assert_eq!(h1[0], "Dt");
    assert_eq!(h1[1], "g=0");
    // g = 0 curve is periodic with zeros at t = 2 pi n / 3
    for row in &fig1 {
        let t = row[0];
        let nearest = (3.0 * t / (2.0 * PI)).round() * 2.0 * PI / 3.0;
        if (t - nearest).abs() < 1e-9 {
            assert!(row[1] < 1e-12, "C(g=0) at t = {t} should vanish, got {}", row[1]);
        }
    }

    // beyond the critical temperature every concurrence column is zero
    let (_, fig2) = read_csv(&dir_a.path().join("fig2.csv"));
    for row in fig2.iter().filter(|r| r[0] > 0.029) {
        for &c in &row[1..] {
            assert_eq!(c, 0.0);
        }
    }

    // discord outlives concurrence: some instants with C = 0 but D > 0
    let (_, fig3) = read_csv(&dir_a.path().join("fig3.csv"));
    let outlives = fig1
        .iter()
        .zip(&fig3)
        .any(|(c_row, d_row)| c_row[3] == 0.0 && d_row[3] > 1e-4);
    assert!(outlives, "expected instants where discord persists at g = 0.5");

    let (_, fig4) = read_csv(&dir_a.path().join("fig4.csv"));
    for row in &fig4 {
        for &d in &row[1..] {
            assert!(d > 0.0, "max discord must stay positive");
        }
    }
}
