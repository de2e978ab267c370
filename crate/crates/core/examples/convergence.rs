//! Breakdown bounds for growing samples from a symmetric law.
//!
//!     cargo run --release --example convergence -- /tmp/conv

use std::path::PathBuf;

use halfspace_median::distributions::DistributionSpec;
use halfspace_median::error::Error;
use halfspace_median::experiments::{gap_trend_holds, run_convergence, ExperimentConfig};

fn main() -> halfspace_median::error::Result<()> {
    let spec = DistributionSpec::ball_sphere_mixture(2)?.with_precision(24);
    let mut cfg = ExperimentConfig::new("mixture", spec, vec![50, 100, 200, 400], 5, 42);
    cfg.out = std::env::args().nth(1).map(PathBuf::from);
    let outcome = run_convergence(&cfg)?;
    for p in &outcome.preflight {
        println!("preflight: {p}");
    }
    for a in &outcome.aggregates {
        println!(
            "n = {:4}: median lower {:.4}, median upper {:.4}, gap to 1/3 {:.4}",
            a.n, a.median_lower, a.median_upper, a.gap
        );
    }
    println!("gap non-increasing (one blip allowed): {}", gap_trend_holds(&outcome.aggregates, 1));

    // An asymmetric law is refused before any sampling.
    let cloud = DistributionSpec::discrete_cloud(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]], vec![1.0; 3])?
        .with_center(vec![2.0, 0.0]);
    match run_convergence(&ExperimentConfig::new("cloud", cloud, vec![20], 1, 0)) {
        Err(Error::ProbeRefused(why)) => println!("refused: {why}"),
        other => println!("unexpected: {:?}", other.map(|o| o.rows.len())),
    }
    Ok(())
}
