//! Attack along the searched minimizing direction on a sampled disc, with
//! geometry written for plotting.
//!
//!     cargo run --release --example attack_demo -- /tmp/attack

use std::path::PathBuf;

use halfspace_median::breakdown::DirectionSearchConfig;
use halfspace_median::distributions::{sample, DistributionSpec};
use halfspace_median::experiments::{format_attack, run_attack_demo, write_attack};
use halfspace_median::geometry::int;

fn main() -> halfspace_median::error::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from);
    let ds = sample(&DistributionSpec::uniform_ball(2, 1.0)?.with_precision(12), 100, 5)?;
    let demo = run_attack_demo(&ds, &DirectionSearchConfig::default(), &int(1000))?;
    print!("{}", format_attack(&ds, &demo));
    println!("lambda* = {}, sound = {}", demo.lambda_star, demo.sound());
    println!("with m = {}: escaped = {}", demo.weak_m, demo.weak_escaped());
    if let Some(dir) = out {
        write_attack(&dir, "disc", &ds, &demo)?;
        println!("wrote {}", dir.display());
    }
    Ok(())
}
