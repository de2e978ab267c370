//! Exact halfspace depth of a few points of the degenerate DS-A sample,
//! with the direction that attains it and the full cone of such directions.
//!
//!     cargo run --example depth

use halfspace_median::depth::{directional_quantile, optimal_direction_cone, tukey_depth, DepthValue};
use halfspace_median::geometry::{ratio, DataSet, Direction, Point};
use halfspace_median::io::format_rational;

fn main() -> halfspace_median::error::Result<()> {
    let ds = DataSet::from_ints(&[&[0, 0], &[2, 0], &[1, 1], &[1, 1]])?;

    for x in [
        Point::from_ints(&[1, 1]),
        Point::from_ints(&[0, 0]),
        Point::new(vec![ratio(1, 1), ratio(1, 2)]),
        Point::from_ints(&[5, 5]),
    ] {
        let (depth, witness) = tukey_depth(&x, &ds)?;
        println!(
            "D({x:?}) = {depth}  witness u = {:?}, {} points with u.X <= u.x",
            witness.direction, witness.count_le
        );
    }

    let cone = optimal_direction_cone(&Point::from_ints(&[1, 1]), &ds)?;
    println!("minimizing cells at (1,1): {}", cone.len());
    for u in cone {
        println!("  {u:?}");
    }

    let up = Direction::from_ints(&[0, 1])?;
    for tau in [DepthValue::new(1, 2), DepthValue::new(3, 4)] {
        let q = directional_quantile(&ds, &up, tau)?;
        println!("quantile along (0,1) at {tau}: {}", format_rational(&q));
    }
    Ok(())
}
