//! Tukey median of samples in the plane and in space.

use halfspace_median::distributions::{sample, DistributionSpec};
use halfspace_median::geometry::DataSet;
use halfspace_median::regions::{median_region, median_region_with, MedianAverage};

fn main() -> halfspace_median::error::Result<()> {
    let square = DataSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])?;
    let m = median_region(&square)?;
    println!("square: lambda* = {}, median = {:?}", m.lambda_star, m.median);

    let ds = sample(&DistributionSpec::uniform_ball(2, 1.0)?.with_precision(16), 200, 1)?;
    let m = median_region(&ds)?;
    let v = median_region_with(&ds, MedianAverage::VertexAverage)?;
    println!(
        "disc, n = 200: lambda* = {}, {} vertices\n  barycenter     {:?}\n  vertex average {:?}",
        m.lambda_star,
        m.region.vertices.len(),
        m.median.to_f64(),
        v.median.to_f64()
    );

    let ds = sample(&DistributionSpec::uniform_ball(3, 1.0)?.with_precision(12), 15, 2)?;
    let m = median_region(&ds)?;
    println!(
        "ball, n = 15: lambda* = {}, region of dimension {:?}, median {:?}",
        m.lambda_star,
        m.region.affine_dim,
        m.median.to_f64()
    );
    Ok(())
}
