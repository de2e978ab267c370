//! Lower and upper bounds on the addition breakdown point of the Tukey
//! median, and the exact value for tiny samples by exhaustive attack.

use halfspace_median::breakdown::{
    default_scales, exact_breakdown, lower_bound, projected_lambda, upper_bound, write_reports_csv,
    DirectionSearchConfig,
};
use halfspace_median::distributions::{sample, DistributionSpec};
use halfspace_median::geometry::{DataSet, Direction};
use halfspace_median::io::format_rational;

fn main() -> halfspace_median::error::Result<()> {
    let ds_a = DataSet::from_ints(&[&[0, 0], &[2, 0], &[1, 1], &[1, 1]])?;
    let ds_b = DataSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])?;

    for (u, name) in [([0, 1], "(0,1)"), ([1, 0], "(1,0)")] {
        let l = projected_lambda(&ds_a, &Direction::from_ints(&u)?)?;
        println!("DS-A lambda_u for u = {name}: {l}");
    }

    let mut reports = Vec::new();
    for (name, ds) in [("DS-A", &ds_a), ("DS-B", &ds_b)] {
        let ub = upper_bound(ds, &DirectionSearchConfig::default())?;
        let report = exact_breakdown(ds, ds.len(), &default_scales())?;
        println!(
            "{name}: {} <= eps <= {}  exact m = {:?}",
            format_rational(&lower_bound(ds)?),
            format_rational(&ub.ratio),
            report.exact_m
        );
        reports.push(report);
    }

    let ds = sample(&DistributionSpec::uniform_ball(2, 1.0)?.with_precision(8), 9, 4)?;
    let report = exact_breakdown(&ds, ds.len(), &default_scales())?;
    println!(
        "random n = 9: {} <= {} <= {}",
        format_rational(&report.lower),
        report.ratio().map(|r| format_rational(&r)).unwrap_or_else(|| "none".into()),
        format_rational(&report.upper)
    );
    reports.push(report);

    write_reports_csv(std::io::stdout(), &reports)?;
    Ok(())
}
