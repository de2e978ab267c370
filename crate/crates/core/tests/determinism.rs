use std::fs;

use halfspace_median::distributions::{sample, DistributionSpec};
use halfspace_median::experiments::{run_convergence, sub_seed, ExperimentConfig};

fn config(dir: &std::path::Path) -> ExperimentConfig {
    let spec = DistributionSpec::uniform_ball(2, 1.0).unwrap().with_precision(20);
    let mut cfg = ExperimentConfig::new("ball", spec, vec![30, 60], 3, 17);
    cfg.out = Some(dir.to_path_buf());
    cfg
}

#[test]
fn convergence_csv_is_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run_convergence(&config(a.path())).unwrap();
    run_convergence(&config(b.path())).unwrap();
    for f in ["ball.csv", "ball_summary.csv"] {
        let x = fs::read(a.path().join(f)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn trial_seeds_do_not_collide() {
    let mut seeds: Vec<u64> = (0..1000).map(|i| sub_seed(17, i)).collect();
    seeds.sort();
    seeds.dedup();
    assert_eq!(seeds.len(), 1000);
}

#[test]
fn sampling_depends_only_on_seed() {
    let spec = DistributionSpec::ball_sphere_mixture(3).unwrap().with_precision(30);
    assert_eq!(sample(&spec, 50, 9).unwrap(), sample(&spec, 50, 9).unwrap());
    assert_ne!(sample(&spec, 50, 9).unwrap(), sample(&spec, 50, 10).unwrap());
}
