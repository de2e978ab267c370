//! Cross-check depth regions against pointwise depth on random degenerate
//! instances.

use halfspace_median::distributions::DistributionSpec;
use halfspace_median::experiments::{run_region_oracle, OracleConfig};

fn main() -> halfspace_median::error::Result<()> {
    let base = DistributionSpec::uniform_ball(2, 1.0)?.with_precision(10);
    let spec = DistributionSpec::degenerate(base, 0.3, 0.2)?;
    let s = run_region_oracle(&OracleConfig::new(spec, 40, 12, 1))?;
    println!(
        "plane: {} instances, {} levels, {} probes, {} mismatches",
        s.instances,
        s.levels,
        s.probes,
        s.mismatches.len()
    );

    let mut cfg = OracleConfig::new(DistributionSpec::uniform_ball(2, 1.0)?.with_precision(16), 20, 10, 2);
    cfg.general_position = true;
    let s = run_region_oracle(&cfg)?;
    println!(
        "general position: {} certificates, {} with other than 2 boundary points or ceil(n tau) - 1 cuts",
        s.certificates, s.certificate_exceptions
    );

    let base = DistributionSpec::uniform_ball(3, 1.0)?.with_precision(10);
    let s = run_region_oracle(&OracleConfig::new(DistributionSpec::degenerate(base, 0.3, 0.2)?, 10, 8, 3))?;
    println!("space: {} probes, {} mismatches", s.probes, s.mismatches.len());
    Ok(())
}
