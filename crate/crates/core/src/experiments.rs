//! Orchestration of the convergence, region-oracle and attack experiments.
//!
//! Every run is a pure function of its configuration and master seed. Trial
//! seeds are derived by counter, rows are sorted by `(n, trial)` before they
//! are written, and wall-clock timings go to a separate file so the result
//! tables are byte-identical across runs.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::breakdown::{
    build_attack, upper_bound, verify_attack, AttackCheck, ContaminationPlan, DirectionSearchConfig,
};
use crate::depth::{tukey_depth, DepthValue};
use crate::distributions::{halfspace_symmetry_probe, sample, smoothness_probe, DistributionSpec, ProbeReport, ProbeSource};
use crate::error::{Error, Result};
use crate::geometry::{affine_dimension, snap, to_f64, DataSet, Point, Polytope, Scalar};
use crate::io::{format_rational, format_region};
use crate::regions::{depth_region, enumerate_irrotatable, median_region};

/// Sub-seed `index` of a master seed.
pub fn sub_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng.next_u64()
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub name: String,
    pub spec: DistributionSpec,
    /// Sample sizes, strictly increasing.
    pub schedule: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub search: DirectionSearchConfig,
    pub out: Option<PathBuf>,
    /// Wall limit per `(n, trial)`.
    pub budget: Duration,
    /// Draws per preflight probe.
    pub probe_draws: usize,
    pub probe_directions: usize,
}

impl ExperimentConfig {
    pub fn new(name: &str, spec: DistributionSpec, schedule: Vec<usize>, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            name: name.to_string(),
            spec,
            schedule,
            trials,
            seed,
            search: DirectionSearchConfig::default(),
            out: None,
            budget: Duration::from_secs(60),
            probe_draws: 20_000,
            probe_directions: 64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Precondition("trials must be at least 1".into()));
        }
        if self.schedule.is_empty() || self.schedule.windows(2).any(|w| w[1] <= w[0]) || self.schedule[0] == 0 {
            return Err(Error::Precondition("n schedule must be positive and strictly increasing".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub lambda_star: Option<DepthValue>,
    pub lower: Option<Scalar>,
    pub inf_lambda_u: Option<DepthValue>,
    pub upper: Option<Scalar>,
    pub upper_exact: bool,
    pub runtime_ms: u128,
    /// False when the budget ran out before every column was filled.
    pub complete: bool,
}

impl ConvergenceRow {
    pub const CSV_HEADER: [&'static str; 9] =
        ["n", "trial", "seed", "lambda_star", "lower", "inf_lambda_u", "upper", "upper_exact", "status"];

    pub fn csv_record(&self) -> Vec<String> {
        let opt = |v: Option<String>| v.unwrap_or_default();
        vec![
            self.n.to_string(),
            self.trial.to_string(),
            self.seed.to_string(),
            opt(self.lambda_star.map(|l| l.to_string())),
            opt(self.lower.as_ref().map(format_rational)),
            opt(self.inf_lambda_u.map(|l| l.to_string())),
            opt(self.upper.as_ref().map(format_rational)),
            self.upper_exact.to_string(),
            if self.complete { "ok" } else { "partial" }.to_string(),
        ]
    }
}

/// Per-`n` medians over trials.
#[derive(Clone, Debug)]
pub struct ConvergenceAggregate {
    pub n: usize,
    pub trials: usize,
    pub median_lower: f64,
    pub median_upper: f64,
    /// `max(|median_lower - 1/3|, |median_upper - 1/3|)`.
    pub gap: f64,
}

#[derive(Clone, Debug)]
pub struct ConvergenceOutcome {
    pub preflight: Vec<ProbeReport>,
    pub rows: Vec<ConvergenceRow>,
    pub aggregates: Vec<ConvergenceAggregate>,
}

impl ConvergenceOutcome {
    pub fn budget_exceeded(&self) -> bool {
        self.rows.iter().any(|r| !r.complete)
    }
}

/// Symmetry and smoothness at the center; refuses with the failing report.
pub fn preflight(cfg: &ExperimentConfig) -> Result<Vec<ProbeReport>> {
    let theta0 = cfg.spec.center.clone();
    let sym = halfspace_symmetry_probe(
        ProbeSource::Spec(&cfg.spec),
        &theta0,
        cfg.probe_directions,
        cfg.probe_draws,
        cfg.seed,
    )?;
    if !sym.verdict.is_favorable() {
        return Err(Error::ProbeRefused(sym.to_string()));
    }
    let smooth = smoothness_probe(
        &cfg.spec,
        &theta0,
        &[1e-1, 1e-2, 1e-3],
        cfg.probe_directions,
        cfg.probe_draws,
        cfg.seed,
    )?;
    if !smooth.verdict.is_favorable() {
        return Err(Error::ProbeRefused(smooth.to_string()));
    }
    Ok(vec![sym, smooth])
}

/// Attempts at drawing a full-dimensional sample before giving up.
const RESAMPLE_LIMIT: u64 = 100;

/// A sample of affine dimension `d`, redrawn from follow-up seeds if needed.
pub fn full_dimensional_sample(spec: &DistributionSpec, n: usize, seed: u64) -> Result<DataSet> {
    for attempt in 0..RESAMPLE_LIMIT {
        let ds = sample(spec, n, sub_seed(seed, attempt))?;
        if affine_dimension(&ds) == spec.dim() {
            return Ok(ds);
        }
    }
    Err(Error::DegenerateAffineDimension {
        expected: spec.dim(),
        found: spec.dim() - 1,
    })
}

fn convergence_trial(cfg: &ExperimentConfig, n: usize, trial: usize, seed: u64) -> Result<ConvergenceRow> {
    let start = Instant::now();
    let mut row = ConvergenceRow {
        n,
        trial,
        seed,
        lambda_star: None,
        lower: None,
        inf_lambda_u: None,
        upper: None,
        upper_exact: false,
        runtime_ms: 0,
        complete: false,
    };
    let ds = full_dimensional_sample(&cfg.spec, n, seed)?;
    let lambda = median_region(&ds)?.lambda_star;
    row.lambda_star = Some(lambda);
    row.lower = Some(lambda.breakdown_ratio());
    if start.elapsed() <= cfg.budget {
        let search = DirectionSearchConfig {
            seed,
            ..cfg.search.clone()
        };
        let ub = upper_bound(&ds, &search)?;
        row.inf_lambda_u = Some(ub.lambda);
        row.upper = Some(ub.ratio);
        row.upper_exact = ub.exact;
        row.complete = start.elapsed() <= cfg.budget;
    }
    row.runtime_ms = start.elapsed().as_millis();
    Ok(row)
}

/// Bounds on the breakdown point of the sample median across the schedule.
///
/// Writes `<name>.csv`, `<name>_summary.csv` and `<name>_timing.csv` when an
/// output directory is set.
pub fn run_convergence(cfg: &ExperimentConfig) -> Result<ConvergenceOutcome> {
    cfg.validate()?;
    let preflight = preflight(cfg)?;
    let jobs: Vec<(usize, usize)> = cfg
        .schedule
        .iter()
        .flat_map(|&n| (0..cfg.trials).map(move |t| (n, t)))
        .collect();
    let mut rows = jobs
        .par_iter()
        .enumerate()
        .map(|(i, &(n, t))| convergence_trial(cfg, n, t, sub_seed(cfg.seed, i as u64)))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.n, r.trial));
    let aggregates = aggregate(&rows);
    let outcome = ConvergenceOutcome {
        preflight,
        rows,
        aggregates,
    };
    if let Some(dir) = &cfg.out {
        write_convergence(dir, &cfg.name, &outcome)?;
    }
    Ok(outcome)
}

fn median_of(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let h = v.len() / 2;
    if v.len() % 2 == 1 {
        v[h]
    } else {
        (v[h - 1] + v[h]) / 2.0
    }
}

pub fn aggregate(rows: &[ConvergenceRow]) -> Vec<ConvergenceAggregate> {
    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.dedup();
    ns.into_iter()
        .map(|n| {
            let here: Vec<&ConvergenceRow> = rows.iter().filter(|r| r.n == n && r.complete).collect();
            let lower = median_of(here.iter().filter_map(|r| r.lower.as_ref()).map(to_f64).collect());
            let upper = median_of(here.iter().filter_map(|r| r.upper.as_ref()).map(to_f64).collect());
            let third = 1.0 / 3.0;
            ConvergenceAggregate {
                n,
                trials: here.len(),
                median_lower: lower,
                median_upper: upper,
                gap: (lower - third).abs().max((upper - third).abs()),
            }
        })
        .collect()
}

/// Whether the gap never grows along the schedule, tolerating `blips` increases.
pub fn gap_trend_holds(aggs: &[ConvergenceAggregate], blips: usize) -> bool {
    aggs.windows(2).filter(|w| w[1].gap > w[0].gap).count() <= blips
}

fn write_convergence(dir: &Path, name: &str, outcome: &ConvergenceOutcome) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut w = csv::Writer::from_path(dir.join(format!("{name}.csv")))?;
    w.write_record(ConvergenceRow::CSV_HEADER)?;
    for r in &outcome.rows {
        w.write_record(r.csv_record())?;
    }
    w.flush()?;
    let mut w = csv::Writer::from_path(dir.join(format!("{name}_summary.csv")))?;
    w.write_record(["n", "trials", "median_lower", "median_upper", "gap"])?;
    for a in &outcome.aggregates {
        w.write_record([
            a.n.to_string(),
            a.trials.to_string(),
            format!("{:.6}", a.median_lower),
            format!("{:.6}", a.median_upper),
            format!("{:.6}", a.gap),
        ])?;
    }
    w.flush()?;
    let mut w = csv::Writer::from_path(dir.join(format!("{name}_timing.csv")))?;
    w.write_record(["n", "trial", "runtime_ms"])?;
    for r in &outcome.rows {
        w.write_record([r.n.to_string(), r.trial.to_string(), r.runtime_ms.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Sampler for the instances; a degenerate wrapper adds ties.
    pub spec: DistributionSpec,
    pub instances: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub random_probes: usize,
    /// Outward step off each facet.
    pub push: Scalar,
    /// Keep only instances in general position and check certificate shape.
    pub general_position: bool,
}

impl OracleConfig {
    pub fn new(spec: DistributionSpec, instances: usize, n_max: usize, seed: u64) -> Self {
        OracleConfig {
            n_min: spec.dim() + 2,
            spec,
            instances,
            n_max,
            seed,
            random_probes: 100,
            push: crate::geometry::ratio(1, 1 << 20),
            general_position: false,
        }
    }
}

/// A probe whose region membership disagrees with its depth.
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub instance: usize,
    pub tau: DepthValue,
    pub probe: Point,
    pub depth: DepthValue,
    pub in_region: bool,
}

#[derive(Clone, Debug, Default)]
pub struct OracleSummary {
    pub instances: usize,
    pub levels: usize,
    pub probes: usize,
    pub mismatches: Vec<Mismatch>,
    pub certificates: usize,
    /// Certificates without exactly `d` boundary points and `⌈nτ⌉ - 1` cuts.
    pub certificate_exceptions: usize,
}

impl OracleSummary {
    fn merge(mut self, o: OracleSummary) -> Self {
        self.instances += o.instances;
        self.levels += o.levels;
        self.probes += o.probes;
        self.mismatches.extend(o.mismatches);
        self.certificates += o.certificates;
        self.certificate_exceptions += o.certificate_exceptions;
        self
    }
}

/// Points just outside each facet: the mean of its tight vertices moved by
/// `push` along the normal scaled to unit max-norm.
pub fn facet_pushes(region: &Polytope, push: &Scalar) -> Vec<Point> {
    region
        .halfspaces
        .iter()
        .filter_map(|h| {
            let tight = region.tight_vertices(h);
            let foot = Point::centroid(tight.iter().copied())?;
            let u = h.normal.coords();
            let norm = u.iter().map(|c| c.abs()).max().expect("nonzero normal");
            // Halfspaces are `u·x >= q`; outward is `-u`.
            Some(foot.offset(u, &(-push / norm)))
        })
        .collect()
}

fn random_probes(ds: &DataSet, count: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let (lo, hi) = ds.bounding_box();
    let bits = ds.precision_bits.unwrap_or(20).min(20);
    (0..count)
        .map(|_| {
            let coords = lo
                .iter()
                .zip(&hi)
                .map(|(a, b)| {
                    let (a, b) = (to_f64(a) - 0.5, to_f64(b) + 0.5);
                    snap(rng.gen_range(a..=b), bits)
                })
                .collect();
            Point::new(coords)
        })
        .collect()
}

fn oracle_instance(cfg: &OracleConfig, index: usize) -> Result<OracleSummary> {
    let seed = sub_seed(cfg.seed, index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = cfg.spec.dim();
    let ds = loop {
        let n = rng.gen_range(cfg.n_min..=cfg.n_max);
        let ds = sample(&cfg.spec, n, rng.next_u64())?;
        if affine_dimension(&ds) == d && (!cfg.general_position || ds.in_general_position()) {
            break ds;
        }
    };
    let n = ds.len();
    let lambda = median_region(&ds)?.lambda_star;
    let mut out = OracleSummary {
        instances: 1,
        ..Default::default()
    };
    let shared: Vec<Point> = ds
        .points()
        .iter()
        .cloned()
        .chain(random_probes(&ds, cfg.random_probes, &mut rng))
        .collect();
    let mut depths = std::collections::BTreeMap::new();
    let mut depth_of = |p: &Point| -> Result<DepthValue> {
        if let Some(v) = depths.get(p) {
            return Ok(*v);
        }
        let v = tukey_depth(p, &ds)?.0;
        depths.insert(p.clone(), v);
        Ok(v)
    };
    for k in 1..=lambda.count {
        let tau = DepthValue::new(k, n as u64);
        let region = depth_region(&ds, tau)?;
        out.levels += 1;
        let battery = region
            .vertices
            .iter()
            .cloned()
            .chain(facet_pushes(&region, &cfg.push))
            .chain(shared.iter().cloned());
        for p in battery {
            let depth = depth_of(&p)?;
            let in_region = region.contains(&p);
            out.probes += 1;
            if in_region != (depth >= tau) {
                out.mismatches.push(Mismatch {
                    instance: index,
                    tau,
                    probe: p,
                    depth,
                    in_region,
                });
            }
        }
        if cfg.general_position {
            let certs = enumerate_irrotatable(&ds, tau)?;
            out.certificates += certs.len();
            let cut = tau.required_count(n) - 1;
            out.certificate_exceptions += certs
                .iter()
                .filter(|c| c.boundary_points.len() != d || c.cut_count != cut)
                .count();
        }
    }
    Ok(out)
}

/// Compares depth regions with pointwise depth on a probe battery of region
/// vertices, facet pushes, sample points and random points.
pub fn run_region_oracle(cfg: &OracleConfig) -> Result<OracleSummary> {
    if !(2..=3).contains(&cfg.spec.dim()) {
        return Err(Error::UnsupportedDimension(cfg.spec.dim()));
    }
    if cfg.n_min > cfg.n_max || cfg.n_min <= cfg.spec.dim() {
        return Err(Error::Precondition("need d < n_min <= n_max".into()));
    }
    let parts = (0..cfg.instances)
        .into_par_iter()
        .map(|i| oracle_instance(cfg, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().fold(OracleSummary::default(), OracleSummary::merge))
}

/// An attack at `m = ⌈nλ_u⌉` together with the same plan one copy short of
/// `⌈nλ*⌉`, which the lower bound says cannot break the median.
#[derive(Clone, Debug)]
pub struct AttackDemo {
    pub plan: ContaminationPlan,
    pub check: AttackCheck,
    pub weak_m: usize,
    pub weak_check: Option<AttackCheck>,
    pub lambda_star: DepthValue,
}

impl AttackDemo {
    /// Median distance grew at least linearly over all three scales.
    pub fn sound(&self) -> bool {
        let bound = DepthValue::new(self.plan.lambda_u.count, (self.plan.lambda_u.n as usize + self.plan.m) as u64);
        self.check.escaped && self.check.sup_depth_inside <= bound
    }

    pub fn weak_escaped(&self) -> bool {
        self.weak_check.as_ref().is_some_and(|c| c.escaped)
    }
}

/// Builds the attack along the minimizing direction of `search` and checks
/// it at `distance`, 10 and 100 times that.
pub fn run_attack_demo(ds: &DataSet, search: &DirectionSearchConfig, distance: &Scalar) -> Result<AttackDemo> {
    if !(2..=3).contains(&ds.dim()) {
        return Err(Error::UnsupportedDimension(ds.dim()));
    }
    let ub = upper_bound(ds, search)?;
    let plan = build_attack(ds, &ub.direction, distance)?;
    let check = verify_attack(ds, &plan)?;
    let lambda_star = median_region(ds)?.lambda_star;
    let weak_m = (lambda_star.count as usize).saturating_sub(1);
    let weak_check = if weak_m == 0 {
        None
    } else {
        Some(verify_attack(ds, &plan.with_m(weak_m))?)
    };
    Ok(AttackDemo {
        plan,
        check,
        weak_m,
        weak_check,
        lambda_star,
    })
}

/// Plot-ready text: the line `ℓ_u`, the placement, and the median per scale.
pub fn format_attack(ds: &DataSet, demo: &AttackDemo) -> String {
    let p = &demo.plan;
    let pt = |x: &Point| x.coords().iter().map(format_rational).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    s.push_str(&format!("# n {} m {} lambda_u {}\n", ds.len(), p.m, p.lambda_u));
    s.push_str(&format!("line_anchor {}\n", pt(&p.anchor)));
    s.push_str(&format!("line_direction {}\n", p.u.coords().iter().map(format_rational).collect::<Vec<_>>().join(" ")));
    s.push_str(&format!("y0 {}\n", pt(&p.y0)));
    for ((scale, dist), med) in demo.check.scales.iter().zip(&demo.check.distances).zip(&demo.check.medians) {
        s.push_str(&format!("median scale {} distance {dist:.6} at {}\n", format_rational(scale), pt(med)));
    }
    s.push_str(&format!("escaped {}\n", demo.check.escaped));
    s
}

pub fn write_attack(dir: &Path, name: &str, ds: &DataSet, demo: &AttackDemo) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(format!("{name}_attack.txt")), format_attack(ds, demo))?;
    let hull = depth_region(ds, DepthValue::new(1, ds.len() as u64))?;
    std::fs::write(dir.join(format!("{name}_hull.txt")), format_region(&hull, "hull"))?;
    Ok(())
}

/// `k/n` as a depth level in `(0, 1]`.
pub fn parse_tau(s: &str) -> Result<DepthValue> {
    let v: DepthValue = s.parse()?;
    v.check_level()?;
    Ok(v)
}
