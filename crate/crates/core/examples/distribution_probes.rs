//! Monte Carlo probes of symmetry, smoothness and depth continuity.
//!
//! The ball/sphere mixture has an atom-like shell yet no hyperplane carries
//! mass, so it is smooth everywhere. Putting mass 0.4 on a line through the
//! center breaks smoothness there and makes the depth jump.

use halfspace_median::distributions::{
    depth_continuity_probe, halfspace_symmetry_probe, norms, sample, smoothness_probe, DistributionSpec, ProbeSource,
};

fn main() -> halfspace_median::error::Result<()> {
    let mixture = DistributionSpec::ball_sphere_mixture(2)?;
    let ds = sample(&mixture, 10_000, 1)?;
    let inside = norms(&ds).iter().filter(|r| **r <= 1.0).count() as f64 / ds.len() as f64;
    println!("mixture: fraction in the unit ball {inside:.4}");
    println!("{}", halfspace_symmetry_probe(ProbeSource::Spec(&mixture), &[0.0, 0.0], 360, 100_000, 2)?);
    for x0 in [[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]] {
        let r = smoothness_probe(&mixture, &x0, &[1e-1, 1e-2, 1e-3], 360, 100_000, 3)?;
        println!("at {x0:?}: {r}");
    }

    let atom = DistributionSpec::atom_on_hyperplane(0.4, DistributionSpec::uniform_ball(2, 1.0)?)?;
    println!("{}", smoothness_probe(&atom, &[0.0, 0.0], &[1e-1, 1e-2, 1e-3], 360, 100_000, 4)?);
    let r = depth_continuity_probe(&atom, &[0.0, 0.0], &[1.0, 0.0], &[1e-1, 1e-2, 1e-3], 100_000, 5)?;
    println!("{r}");
    for (k, v) in &r.details {
        println!("    {k}: {v:.4}");
    }

    let cloud = DistributionSpec::discrete_cloud(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]], vec![1.0; 3])?;
    println!("{}", halfspace_symmetry_probe(ProbeSource::Spec(&cloud), &[2.0, 0.0], 64, 30_000, 6)?);
    Ok(())
}
