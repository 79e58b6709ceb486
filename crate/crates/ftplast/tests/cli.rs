use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ftplast::generate::{random_scene, GenOptions};
use ftplast::scene::Scene;

const EQUILATERAL: &str = r#"{"circles":[
  {"cx":0,"cy":0.5773502691896258,"r":0.1},
  {"cx":-0.5,"cy":-0.28867513459481287,"r":0.1},
  {"cx":0.5,"cy":-0.28867513459481287,"r":0.1}],
  "weights":[1,1,1]}"#;

fn ftplast(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ftplast"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn solve_equilateral_reports_120_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "eq.json", EQUILATERAL);
    let o = ftplast(&["solve", &scene]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("case=floating"));
    assert_eq!(text.matches("120.000000°").count(), 3, "{text}");
}

#[test]
fn inverse_of_equilateral_is_uniform() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "eq.json", EQUILATERAL);
    let json = stdout(&ftplast(&["solve", &scene, "--json"]));
    let with_point = write(dir.path(), "sol.json", &json);
    let o = ftplast(&["inverse", &with_point]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).matches("0.333333").count(), 3);
}

#[test]
fn json_round_trip_recovers_weights() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..10 {
        let cfg = random_scene(seed, 3, &GenOptions::default()).unwrap();
        let scene = write(
            dir.path(),
            "s.json",
            &Scene::from_configuration(&cfg).to_json_pretty(),
        );
        let json = stdout(&ftplast(&["solve", &scene, "--json"]));
        let sol = write(dir.path(), "sol.json", &json);
        let out = stdout(&ftplast(&["inverse", &sol]));
        let total = cfg.total_weight();
        for (i, w) in cfg.weights().iter().enumerate() {
            let line = out
                .lines()
                .find(|l| l.starts_with(&format!("w{} = ", i + 1)))
                .unwrap();
            let got: f64 = line.split(" = ").nth(1).unwrap().parse().unwrap();
            assert!(
                (got - w / total).abs() < 1e-7,
                "seed {seed}: {got} vs {}",
                w / total
            );
        }
    }
}

#[test]
fn json_keys_in_stable_order() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "eq.json", EQUILATERAL);
    let json = stdout(&ftplast(&["solve", &scene, "--json"]));
    let keys = [
        "\"circles\"",
        "\"weights\"",
        "\"mode\"",
        "\"tolerance\"",
        "\"point\"",
        "\"projections\"",
        "\"distances\"",
        "\"sector_angles\"",
        "\"objective\"",
        "\"case\"",
        "\"equilibrium_residual\"",
        "\"residuals\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    assert!(json.contains("2.094395102"));
}

#[test]
fn svg_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = random_scene(5, 4, &GenOptions::default()).unwrap();
    let scene = write(
        dir.path(),
        "s.json",
        &Scene::from_configuration(&cfg).to_json_pretty(),
    );
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    assert!(ftplast(&["solve", &scene, "--svg", a.to_str().unwrap()])
        .status
        .success());
    assert!(ftplast(&["solve", &scene, "--svg", b.to_str().unwrap()])
        .status
        .success());
    let sa = fs::read(&a).unwrap();
    assert_eq!(sa, fs::read(&b).unwrap());
    assert!(String::from_utf8(sa).unwrap().starts_with("<svg"));
}

fn pentagon_scene() -> String {
    let circles: Vec<String> = (0..5)
        .map(|k| {
            let t = std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * k as f64 / 5.0;
            format!(r#"{{"cx":{},"cy":{},"r":0.1}}"#, t.cos(), t.sin())
        })
        .collect();
    format!(
        r#"{{"circles":[{}],"weights":[1,1,1,1,1]}}"#,
        circles.join(",")
    )
}

#[test]
fn evolve_writes_deterministic_csv_and_frames() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "p.json", &pentagon_scene());
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let frames = dir.path().join("frames");
    let o = ftplast(&[
        "evolve",
        &scene,
        "--type",
        "A",
        "--steps",
        "6",
        "--csv",
        a.to_str().unwrap(),
        "--svg-frames",
        frames.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("pattern: as expected"));
    ftplast(&[
        "evolve",
        &scene,
        "--type",
        "A",
        "--steps",
        "6",
        "--csv",
        b.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "step,w1,w2,w3,w4,w5,r1,r2,r3,r4,r5,pattern"
    );
    let first = lines.next().unwrap();
    assert!(first.starts_with("0,1.00000000000,"), "{first}");
    assert!(lines.next().unwrap().ends_with(",-+-++"));
    assert_eq!(fs::read_dir(&frames).unwrap().count(), 7);
}

#[test]
fn evolve_type_b_needs_its_labeling() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "p.json", &pentagon_scene());
    let o = ftplast(&["evolve", &scene, "--type", "B", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("ERROR:precondition_violated:"));
}

#[test]
fn oracle_agrees_on_seed_42() {
    let dir = tempfile::tempdir().unwrap();
    let json = stdout(&ftplast(&["generate", "--seed", "42", "--n", "4"]));
    let scene = write(dir.path(), "g.json", &json);
    let o = ftplast(&["oracle", &scene]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let gap: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("|P_solver - P_oracle| = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(gap < 1e-4, "{text}");
}

#[test]
fn check_and_plasticity_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = random_scene(11, 5, &GenOptions::default()).unwrap();
    let scene = write(
        dir.path(),
        "s.json",
        &Scene::from_configuration(&cfg).to_json_pretty(),
    );
    let o = ftplast(&["check", &scene]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("case=floating"));
    let o = ftplast(&[
        "plasticity",
        &scene,
        "--free",
        "w4=0.5,w5=0.4",
        "--total",
        "3",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("sign pattern") && text.contains("w5 = 0.400000000000"));
}

#[test]
fn verify_geometric_radial_shift_preserves_point() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "eq.json", EQUILATERAL);
    let o = ftplast(&["verify-geometric", &scene, "--shifts", "0.2,-0.1,0.3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("preserved = true"));
}

#[test]
fn errors_are_single_machine_lines() {
    let dir = tempfile::tempdir().unwrap();
    let overlap = write(
        dir.path(),
        "bad.json",
        r#"{"circles":[{"cx":0,"cy":0,"r":1},{"cx":1,"cy":0,"r":1},{"cx":0,"cy":3,"r":0.1}],"weights":[1,1,1]}"#,
    );
    let o = ftplast(&["solve", &overlap]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.starts_with("ERROR:invalid_configuration:"), "{err}");
    assert_eq!(err.trim_end().lines().count(), 1);

    let mismatch = write(
        dir.path(),
        "m.json",
        r#"{"circles":[{"cx":0,"cy":0,"r":1}],"weights":[1,2]}"#,
    );
    assert!(stderr(&ftplast(&["solve", &mismatch])).starts_with("ERROR:invalid_scene:"));

    let o = ftplast(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("ERROR:usage:"));
}

#[test]
fn non_convergence_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = random_scene(3, 4, &GenOptions::default()).unwrap();
    let scene = write(
        dir.path(),
        "s.json",
        &Scene::from_configuration(&cfg).to_json_pretty(),
    );
    let o = ftplast(&["solve", &scene, "--max-iters", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("ERROR:non_convergence:"));
}
