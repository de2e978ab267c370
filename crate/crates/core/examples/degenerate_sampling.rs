//! Samples with ties and collinear triples, and how the exact code copes.

use halfspace_median::distributions::{sample, DistributionSpec};
use halfspace_median::geometry::affine_dimension;
use halfspace_median::regions::median_region;

fn main() -> halfspace_median::error::Result<()> {
    let base = DistributionSpec::uniform_ball(2, 1.0)?.with_precision(10);
    let spec = DistributionSpec::degenerate(base, 0.2, 0.3)?;
    let ds = sample(&spec, 100, 9)?;
    let mut pts = ds.points().to_vec();
    pts.sort();
    let distinct = {
        pts.dedup();
        pts.len()
    };
    println!(
        "n = {}, distinct = {distinct}, general position = {}, affine dimension = {}",
        ds.len(),
        ds.in_general_position(),
        affine_dimension(&ds)
    );
    let m = median_region(&ds)?;
    println!("lambda* = {}, median = {:?}", m.lambda_star, m.median.to_f64());

    // Same seed, same data.
    assert_eq!(sample(&spec, 100, 9)?, ds);
    Ok(())
}
