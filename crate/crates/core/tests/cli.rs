use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn hdepth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdepth")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn median_of_ds_a() {
    let o = hdepth(&["median", "--data", &data("ds_a.txt")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("2/4") || s.contains("1/2"), "{s}");
    assert!(s.contains("v 1 1"), "{s}");
}

#[test]
fn depth_of_negative_point() {
    let o = hdepth(&["depth", "--data", &data("ds_b.txt"), "--point", "-1,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("0/4"));
}

#[test]
fn tau_above_max_depth_is_refused() {
    let o = hdepth(&["region", "--data", &data("ds_a.txt"), "--tau", "3/4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_tau_is_refused() {
    let o = hdepth(&["region", "--data", &data("ds_a.txt"), "--tau", "half"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exact_bounds_of_ds_b() {
    let o = hdepth(&["bounds", "--data", &data("ds_b.txt"), "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("1/3"), "{s}");
}

#[test]
fn asymmetric_law_fails_symmetry_probe() {
    let o = hdepth(&["probe", "--spec", &data("cloud.spec"), "--kind", "symmetry", "--draws", "20000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn mixture_is_smooth() {
    let o = hdepth(&["probe", "--spec", &data("mixture.spec"), "--kind", "smoothness", "--draws", "20000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SMOOTH"));
}

#[test]
fn convergence_refuses_asymmetric_law() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy().into_owned();
    let o = hdepth(&["convergence", "--spec", &data("cloud.spec"), "--schedule", "20", "--trials", "1", "--out", &out]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn convergence_over_budget_aborts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy().into_owned();
    let o = hdepth(&[
        "convergence", "--spec", &data("uniform_ball.spec"), "--schedule", "200", "--trials", "1", "--budget", "0",
        "--out", &out,
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn attack_on_ds_a_escapes() {
    let o = hdepth(&["attack", "--data", &data("ds_a.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("escaped true"));
}

#[test]
fn sampled_data_is_seeded() {
    let run = |seed: &str| stdout(&hdepth(&["median", "--spec", &data("uniform_ball.spec"), "--n", "30", "--seed", seed]));
    assert_eq!(run("4"), run("4"));
    assert_ne!(run("4"), run("5"));
}
