use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use halfspace_median::breakdown::{
    default_scales, exact_breakdown, lower_bound, upper_bound, write_reports_csv, DirectionSearchConfig,
    EXHAUSTIVE_MAX_N,
};
use halfspace_median::depth::{tukey_depth, DepthValue};
use halfspace_median::distributions::{
    depth_continuity_probe, halfspace_symmetry_probe, sample, smoothness_probe, DistributionSpec, ProbeReport,
    ProbeSource,
};
use halfspace_median::error::{Error, Result};
use halfspace_median::experiments::{gap_trend_holds, parse_tau, run_attack_demo, run_convergence, write_attack, ExperimentConfig};
use halfspace_median::geometry::DataSet;
use halfspace_median::io::{format_rational, format_region, parse_point, parse_rational, read_dataset, write_vertices_csv};
use halfspace_median::regions::{depth_region, enumerate_irrotatable, median_region};

#[derive(Parser)]
#[command(name = "hdepth", version, about = "Exact Tukey depth, depth regions and median breakdown")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Dataset file, one point per line.
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    /// Distribution spec file (key = value lines).
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Depth level as k/n.
    #[arg(long, global = true)]
    tau: Option<String>,
    /// Snap precision in bits for sampled data.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Sample size when drawing from --spec.
    #[arg(long, global = true, default_value_t = 100)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Depth of a point, or of every sample point.
    Depth {
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Depth region at --tau.
    Region {
        /// Also list the irrotatable certificates.
        #[arg(long)]
        certificates: bool,
    },
    /// Deepest region, maximal depth and median.
    Median,
    /// Breakdown bounds, and the exact value for small samples.
    Bounds {
        /// Search contamination sizes exhaustively.
        #[arg(long)]
        exact: bool,
    },
    /// Contamination attack along the minimizing direction.
    Attack {
        /// Placement distance.
        #[arg(long, default_value = "1000")]
        distance: String,
    },
    /// Breakdown bounds across a sample-size schedule.
    Convergence {
        #[arg(long, value_delimiter = ',', default_values_t = [50usize, 200, 800, 1600])]
        schedule: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Wall limit per sample in seconds.
        #[arg(long, default_value_t = 60)]
        budget: u64,
    },
    /// Monte Carlo probe of a distribution.
    Probe {
        #[arg(long, value_enum)]
        kind: ProbeKind,
        /// Center or base point; defaults to the spec center.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        draws: usize,
        #[arg(long, default_value_t = 360)]
        directions: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.01, 0.001])]
        widths: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.01, 0.001])]
        radii: Vec<f64>,
        /// Approach direction for the continuity probe.
        #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
        approach: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeKind {
    Symmetry,
    Smoothness,
    Continuity,
}

/// Exit code for an outcome the tool declined to produce.
const REFUSED: u8 = 2;
const OVER_BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("hdepth: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded(_) => OVER_BUDGET,
                _ => REFUSED,
            })
        }
    }
}

fn spec_of(c: &Common) -> Result<Option<(DistributionSpec, Option<u64>)>> {
    let Some(path) = &c.spec else {
        return Ok(None);
    };
    let (mut spec, seed) = DistributionSpec::read(path)?;
    if let Some(bits) = c.precision {
        spec = spec.with_precision(bits);
    }
    Ok(Some((spec, seed)))
}

fn seed_of(c: &Common, from_spec: Option<u64>) -> u64 {
    c.seed.or(from_spec).unwrap_or(0)
}

fn dataset(c: &Common) -> Result<DataSet> {
    if let Some(path) = &c.data {
        return read_dataset(path);
    }
    match spec_of(c)? {
        Some((spec, seed)) => sample(&spec, c.n, seed_of(c, seed)),
        None => Err(Error::Precondition("need --data or --spec".into())),
    }
}

fn tau(c: &Common) -> Result<DepthValue> {
    parse_tau(c.tau.as_deref().ok_or_else(|| Error::Precondition("need --tau k/n".into()))?)
}

fn out_dir(c: &Common) -> Option<&Path> {
    c.out.as_deref()
}

fn run(cli: &Cli) -> Result<u8> {
    let c = &cli.common;
    match &cli.command {
        Command::Depth { point } => {
            let ds = dataset(c)?;
            let points = match point {
                Some(p) => vec![parse_point(p)?],
                None => ds.points().to_vec(),
            };
            println!("point,depth,direction");
            for p in points {
                let (d, w) = tukey_depth(&p, &ds)?;
                let fmt = |v: &[halfspace_median::geometry::Scalar]| {
                    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
                };
                println!("{},{d},{}", fmt(p.coords()), fmt(w.direction.coords()));
            }
            Ok(0)
        }
        Command::Region { certificates } => {
            let ds = dataset(c)?;
            let t = tau(c)?;
            let region = depth_region(&ds, t)?;
            print!("{}", format_region(&region, &format!("tau {t}")));
            if *certificates {
                for cert in enumerate_irrotatable(&ds, t)? {
                    let h = &cert.halfspace;
                    println!(
                        "certificate normal {} offset {} boundary {:?} cut {}",
                        h.normal.coords().iter().map(format_rational).collect::<Vec<_>>().join(" "),
                        format_rational(&h.offset),
                        cert.boundary_points,
                        cert.cut_count
                    );
                }
            }
            if let Some(dir) = out_dir(c) {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("region.txt"), format_region(&region, &format!("tau {t}")))?;
                write_vertices_csv(std::fs::File::create(dir.join("region_vertices.csv"))?, &region)?;
            }
            Ok(0)
        }
        Command::Median => {
            let ds = dataset(c)?;
            let m = median_region(&ds)?;
            println!("lambda_star {}", m.lambda_star);
            println!(
                "median {}",
                m.median.coords().iter().map(format_rational).collect::<Vec<_>>().join(" ")
            );
            print!("{}", format_region(&m.region, "deepest"));
            if let Some(dir) = out_dir(c) {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("median_region.txt"), format_region(&m.region, "deepest"))?;
            }
            Ok(0)
        }
        Command::Bounds { exact } => {
            let ds = dataset(c)?;
            let search = DirectionSearchConfig {
                seed: c.seed.unwrap_or(0),
                ..Default::default()
            };
            let lower = lower_bound(&ds)?;
            let ub = upper_bound(&ds, &search)?;
            println!("lower {}", format_rational(&lower));
            println!(
                "upper {} ({}) lambda_u {} direction {}",
                format_rational(&ub.ratio),
                if ub.exact { "exact" } else { "searched" },
                ub.lambda,
                ub.direction.coords().iter().map(format_rational).collect::<Vec<_>>().join(" ")
            );
            if *exact {
                if ds.len() > EXHAUSTIVE_MAX_N {
                    return Err(Error::Precondition(format!("exact search needs n <= {EXHAUSTIVE_MAX_N}")));
                }
                let report = exact_breakdown(&ds, ds.len(), &default_scales())?;
                match report.ratio() {
                    Some(r) => println!("exact m {} ratio {}", report.exact_m.unwrap_or(0), format_rational(&r)),
                    None => println!("exact none up to m = {}", ds.len()),
                }
                if let Some(dir) = out_dir(c) {
                    std::fs::create_dir_all(dir)?;
                    write_reports_csv(std::fs::File::create(dir.join("bounds.csv"))?, &[report])?;
                }
            }
            Ok(0)
        }
        Command::Attack { distance } => {
            let ds = dataset(c)?;
            let distance = parse_rational(distance).ok_or_else(|| Error::Precondition("bad --distance".into()))?;
            let search = DirectionSearchConfig {
                seed: c.seed.unwrap_or(0),
                ..Default::default()
            };
            let demo = run_attack_demo(&ds, &search, &distance)?;
            print!("{}", halfspace_median::experiments::format_attack(&ds, &demo));
            println!("sup_depth_inside {}", demo.check.sup_depth_inside);
            println!("depth_at_y0 {}", demo.check.depth_at_y0);
            println!("weak_m {} weak_escaped {}", demo.weak_m, demo.weak_escaped());
            if let Some(dir) = out_dir(c) {
                write_attack(dir, "attack", &ds, &demo)?;
            }
            Ok(0)
        }
        Command::Convergence { schedule, trials, budget } => {
            let (spec, seed) = spec_of(c)?.ok_or_else(|| Error::Precondition("need --spec".into()))?;
            let mut cfg = ExperimentConfig::new("convergence", spec, schedule.clone(), *trials, seed_of(c, seed));
            cfg.out = c.out.clone();
            cfg.budget = Duration::from_secs(*budget);
            let outcome = run_convergence(&cfg)?;
            for p in &outcome.preflight {
                println!("preflight {p}");
            }
            println!("n,trials,median_lower,median_upper,gap");
            for a in &outcome.aggregates {
                println!("{},{},{:.6},{:.6},{:.6}", a.n, a.trials, a.median_lower, a.median_upper, a.gap);
            }
            println!("gap trend holds: {}", gap_trend_holds(&outcome.aggregates, 1));
            Ok(if outcome.budget_exceeded() { OVER_BUDGET } else { 0 })
        }
        Command::Probe {
            kind,
            point,
            draws,
            directions,
            widths,
            radii,
            approach,
        } => {
            let spec = spec_of(c)?;
            let seed = seed_of(c, spec.as_ref().and_then(|s| s.1));
            let center: Option<Vec<f64>> = match point {
                Some(p) => Some(parse_point(p)?.to_f64()),
                None => spec.as_ref().map(|s| s.0.center.clone()),
            };
            let report: ProbeReport = match kind {
                ProbeKind::Symmetry => {
                    let data;
                    let source = match (&spec, &c.data) {
                        (Some((s, _)), _) => ProbeSource::Spec(s),
                        (None, Some(path)) => {
                            data = read_dataset(path)?;
                            ProbeSource::Data(&data)
                        }
                        (None, None) => return Err(Error::Precondition("need --spec or --data".into())),
                    };
                    let theta0 = center.ok_or_else(|| Error::Precondition("need --point".into()))?;
                    halfspace_symmetry_probe(source, &theta0, *directions, *draws, seed)?
                }
                ProbeKind::Smoothness => {
                    let (s, _) = spec.as_ref().ok_or_else(|| Error::Precondition("need --spec".into()))?;
                    let x0 = center.unwrap_or_else(|| s.center.clone());
                    smoothness_probe(s, &x0, widths, *directions, *draws, seed)?
                }
                ProbeKind::Continuity => {
                    let (s, _) = spec.as_ref().ok_or_else(|| Error::Precondition("need --spec".into()))?;
                    let x0 = center.unwrap_or_else(|| s.center.clone());
                    let dir = parse_point(approach)?.to_f64();
                    depth_continuity_probe(s, &x0, &dir, radii, *draws, seed)?
                }
            };
            println!("{report}");
            for (k, v) in &report.details {
                println!("  {k}: {v:.4}");
            }
            Ok(if report.verdict.is_favorable() { 0 } else { REFUSED })
        }
    }
}
