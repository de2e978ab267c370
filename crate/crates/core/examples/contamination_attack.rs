//! Drag the median of DS-A to infinity with two added points, and fail
//! with one.
//!
//! The plan puts `m` copies of a point far out along `u`, on the line that
//! crosses the orthocomplement of `u` at the deepest projected point.

use halfspace_median::breakdown::{build_attack, verify_attack};
use halfspace_median::geometry::{int, DataSet, Direction};

fn main() -> halfspace_median::error::Result<()> {
    let ds = DataSet::from_ints(&[&[0, 0], &[2, 0], &[1, 1], &[1, 1]])?;
    let plan = build_attack(&ds, &Direction::from_ints(&[1, 0])?, &int(1_000_000))?;
    println!("m = {}, y0 = {:?}", plan.m, plan.y0);

    for m in [plan.m, plan.m - 1] {
        let check = verify_attack(&ds, &plan.with_m(m))?;
        println!(
            "m = {m}: deepest inside hull {}, depth at y0 {}, escaped {}",
            check.sup_depth_inside, check.depth_at_y0, check.escaped
        );
        for (s, d) in check.scales.iter().zip(&check.distances) {
            println!("    scale {s}: median lies {d:.1} outside the data ball");
        }
    }
    Ok(())
}
