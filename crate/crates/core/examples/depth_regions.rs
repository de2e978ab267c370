//! Depth regions of DS-A and the certificates that cut them out.
//!
//! At level 1/2 the region collapses to the doubled point (1,1). One of the
//! four certificates has three sample points on its boundary and cuts none,
//! which cannot happen for data in general position.

use halfspace_median::depth::DepthValue;
use halfspace_median::geometry::DataSet;
use halfspace_median::io::{format_rational, format_region};
use halfspace_median::regions::{depth_region, enumerate_irrotatable, lower_level};

fn main() -> halfspace_median::error::Result<()> {
    let ds = DataSet::from_ints(&[&[0, 0], &[2, 0], &[1, 1], &[1, 1]])?;
    for tau in [DepthValue::new(1, 4), DepthValue::new(1, 2)] {
        let region = depth_region(&ds, tau)?;
        print!("{}", format_region(&region, &format!("D_{tau}")));
        for cert in enumerate_irrotatable(&ds, tau)? {
            let u: Vec<String> = cert.halfspace.normal.coords().iter().map(format_rational).collect();
            println!(
                "  u = ({}) q = {}  boundary {:?}  cuts {}  next level {:?}",
                u.join(", "),
                format_rational(&cert.halfspace.offset),
                cert.boundary_points,
                cert.cut_count,
                lower_level(&cert, &ds, tau)?.map(|t| t.to_string()),
            );
        }
    }
    match depth_region(&ds, DepthValue::new(3, 4)) {
        Err(e) => println!("D_3/4: {e}"),
        Ok(r) => println!("unexpected region with {} vertices", r.vertices.len()),
    }
    Ok(())
}
