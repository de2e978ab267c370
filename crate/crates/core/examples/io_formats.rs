//! Reading and writing datasets, spec files and region exports.

use halfspace_median::depth::DepthValue;
use halfspace_median::distributions::{sample, DistributionSpec};
use halfspace_median::io::{format_dataset, format_region, parse_dataset, KeyValues};
use halfspace_median::regions::depth_region;

fn main() -> halfspace_median::error::Result<()> {
    let ds = parse_dataset("# triangle with a doubled apex\n0 0\n2, 0\n1/1 1.0\n1 1e0\n")?;
    print!("{}", format_dataset(&ds));
    print!("{}", format_region(&depth_region(&ds, DepthValue::new(1, 2))?, "deepest"));

    let kv = KeyValues::parse("variant = uniform_sphere\ndim = 2\nradius = 2\nprecision_bits = 50\nseed = 3\n")?;
    let (spec, seed) = DistributionSpec::from_key_values(&kv)?;
    let drawn = sample(&spec, 3, seed.unwrap_or(0))?;
    print!("{}", format_dataset(&drawn));
    Ok(())
}
