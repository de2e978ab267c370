//! Exact halfspace intersection and hull membership.

use halfspace_median::geometry::{convex_hull_contains, int, intersect_halfspaces, DataSet, Direction, Halfspace, Point};

fn hs(u: &[i64], q: i64) -> Halfspace {
    Halfspace::new(Direction::from_ints(u).expect("nonzero"), int(q))
}

fn main() -> halfspace_median::error::Result<()> {
    // The unit cube with one corner sliced off.
    let mut faces = Vec::new();
    for k in 0..3 {
        let mut e = [0; 3];
        e[k] = 1;
        faces.push(hs(&e, 0));
        e[k] = -1;
        faces.push(hs(&e, -2));
    }
    faces.push(hs(&[-1, -1, -1], -5));
    let p = intersect_halfspaces(&faces, 3)?;
    println!("{} vertices, barycenter {:?}", p.vertices.len(), p.barycenter());
    println!("vertex centroid {:?}", p.vertex_centroid());

    // Two halfplanes meeting in a ray are flagged as unbounded.
    let wedge = intersect_halfspaces(&[hs(&[1, 0], 0), hs(&[0, 1], 0)], 2)?;
    println!("wedge unbounded: {}", wedge.unbounded);

    let ds = DataSet::from_ints(&[&[0, 0], &[2, 0], &[1, 1], &[1, 1]])?;
    for x in [Point::from_ints(&[1, 0]), Point::from_ints(&[5, 5])] {
        println!("{x:?} in hull: {}", convex_hull_contains(&ds, &x)?);
    }
    Ok(())
}
