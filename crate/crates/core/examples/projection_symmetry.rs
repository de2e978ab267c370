//! A centrally symmetrized sample stays symmetric after projection: every
//! closed halfspace through the projected center holds at least half.

use halfspace_median::breakdown::{project_dataset, projection_frame};
use halfspace_median::distributions::{empirical_symmetry, sample, DistributionSpec};
use halfspace_median::geometry::{Direction, Point};

fn main() -> halfspace_median::error::Result<()> {
    let ds = sample(&DistributionSpec::uniform_ball(3, 1.0)?.with_precision(10), 12, 8)?;
    let center = Point::from_ints(&[0, 0, 0]);
    let sym = ds.symmetrized(&center)?;
    for u in [[1, 0, 0], [1, 2, 3], [-4, 1, 7]] {
        let frame = projection_frame(&Direction::from_ints(&u)?)?;
        let proj = project_dataset(&sym, &frame)?;
        let (ok, depth) = empirical_symmetry(&proj, &frame.project(&center))?;
        println!("u = {u:?}: depth of projected center {depth}, symmetric {ok}");
    }
    Ok(())
}
