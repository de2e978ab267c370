//! Samplers for halfspace-symmetric laws and Monte Carlo probes of the
//! conditions the median's consistency rests on.
//!
//! Draw `i` of a sample with seed `s` comes from its own ChaCha stream
//! `(s, i)`, so samples are reproducible and can be generated in parallel.

use std::path::Path;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::depth::{direction_net, population_depth_from_sample, tukey_depth, DepthValue};
use crate::error::{Error, Result};
use crate::geometry::{snap, to_f64, DataSet, Point};
use crate::io::KeyValues;

/// Law of a single draw, relative to the center except for `DiscreteCloud`.
#[derive(Clone, Debug, PartialEq)]
pub enum Variant {
    UniformBall { dim: usize, radius: f64 },
    UniformSphere { dim: usize, radius: f64 },
    /// Fair coin between the unit ball and the radius-2 sphere.
    BallSphereMixture { dim: usize },
    /// Mass `m0` on the hyperplane `x_1 = θ₀_1`, uniform on a unit
    /// `(d-1)`-ball there; otherwise a draw from `base`.
    AtomOnHyperplane { m0: f64, base: Box<Variant> },
    /// Weighted atoms at absolute positions.
    DiscreteCloud { points: Vec<Vec<f64>>, weights: Vec<f64> },
    /// Draws from `base`, then forces duplicates and collinear triples.
    DegenerateSampler { base: Box<Variant>, dup_rate: f64, collinear_rate: f64 },
}

impl Variant {
    pub fn dim(&self) -> usize {
        match self {
            Variant::UniformBall { dim, .. }
            | Variant::UniformSphere { dim, .. }
            | Variant::BallSphereMixture { dim } => *dim,
            Variant::AtomOnHyperplane { base, .. } | Variant::DegenerateSampler { base, .. } => base.dim(),
            Variant::DiscreteCloud { points, .. } => points.first().map_or(0, Vec::len),
        }
    }

    fn validate(&self) -> Result<()> {
        let rate = |name: &'static str, value: f64| {
            if (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(Error::InvalidRate { name, value })
            }
        };
        match self {
            Variant::UniformBall { dim, radius } | Variant::UniformSphere { dim, radius } => {
                if *dim == 0 || !(*radius > 0.0) {
                    return Err(Error::Precondition("need dim >= 1 and radius > 0".into()));
                }
            }
            Variant::BallSphereMixture { dim } => {
                if *dim == 0 {
                    return Err(Error::Precondition("need dim >= 1".into()));
                }
            }
            Variant::AtomOnHyperplane { m0, base } => {
                rate("m0", *m0)?;
                base.validate()?;
            }
            Variant::DiscreteCloud { points, weights } => {
                if points.is_empty() || points.len() != weights.len() {
                    return Err(Error::Precondition("cloud needs one weight per point".into()));
                }
                let d = points[0].len();
                if let Some(p) = points.iter().find(|p| p.len() != d) {
                    return Err(Error::DimensionMismatch { expected: d, found: p.len() });
                }
                if weights.iter().any(|w| !(*w >= 0.0)) || weights.iter().sum::<f64>() <= 0.0 {
                    return Err(Error::Precondition("cloud weights must be nonnegative with positive sum".into()));
                }
            }
            Variant::DegenerateSampler { base, dup_rate, collinear_rate } => {
                rate("dup_rate", *dup_rate)?;
                rate("collinear_rate", *collinear_rate)?;
                base.validate()?;
            }
        }
        Ok(())
    }

    fn draw<R: Rng>(&self, rng: &mut R, center: &[f64]) -> Vec<f64> {
        let shifted = |z: Vec<f64>| z.iter().zip(center).map(|(a, b)| a + b).collect();
        match self {
            Variant::UniformBall { dim, radius } => shifted(ball(rng, *dim, *radius)),
            Variant::UniformSphere { dim, radius } => shifted(sphere(rng, *dim, *radius)),
            Variant::BallSphereMixture { dim } => {
                if rng.gen_bool(0.5) {
                    shifted(ball(rng, *dim, 1.0))
                } else {
                    shifted(sphere(rng, *dim, 2.0))
                }
            }
            Variant::AtomOnHyperplane { m0, base } => {
                if rng.gen_bool(*m0) {
                    let d = base.dim();
                    let mut z = vec![0.0];
                    if d > 1 {
                        z.extend(ball(rng, d - 1, 1.0));
                    }
                    shifted(z)
                } else {
                    base.draw(rng, center)
                }
            }
            Variant::DiscreteCloud { points, weights } => {
                let idx = WeightedIndex::new(weights).expect("validated weights");
                points[idx.sample(rng)].clone()
            }
            Variant::DegenerateSampler { base, .. } => base.draw(rng, center),
        }
    }

    /// Mass the law places on the hyperplane `x_1 = θ₀_1`, when known.
    pub fn hyperplane_mass(&self) -> Option<f64> {
        match self {
            Variant::AtomOnHyperplane { m0, .. } => Some(*m0),
            Variant::DegenerateSampler { base, .. } => base.hyperplane_mass(),
            _ => None,
        }
    }
}

fn sphere<R: Rng>(rng: &mut R, d: usize, radius: f64) -> Vec<f64> {
    loop {
        let z: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let norm = z.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 0.0 {
            return z.into_iter().map(|c| radius * c / norm).collect();
        }
    }
}

fn ball<R: Rng>(rng: &mut R, d: usize, radius: f64) -> Vec<f64> {
    let r: f64 = rng.gen::<f64>().powf(1.0 / d as f64);
    sphere(rng, d, radius * r)
}

/// A sampling law with its center of symmetry and snap precision.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionSpec {
    pub variant: Variant,
    pub center: Vec<f64>,
    pub precision_bits: u32,
}

impl DistributionSpec {
    pub fn new(variant: Variant) -> Result<Self> {
        variant.validate()?;
        let d = variant.dim();
        Ok(DistributionSpec {
            variant,
            center: vec![0.0; d],
            precision_bits: 53,
        })
    }

    pub fn uniform_ball(d: usize, radius: f64) -> Result<Self> {
        Self::new(Variant::UniformBall { dim: d, radius })
    }

    pub fn uniform_sphere(d: usize, radius: f64) -> Result<Self> {
        Self::new(Variant::UniformSphere { dim: d, radius })
    }

    pub fn ball_sphere_mixture(d: usize) -> Result<Self> {
        Self::new(Variant::BallSphereMixture { dim: d })
    }

    pub fn atom_on_hyperplane(m0: f64, base: DistributionSpec) -> Result<Self> {
        Self::new(Variant::AtomOnHyperplane { m0, base: Box::new(base.variant) }).map(|s| s.with_center(base.center))
    }

    pub fn discrete_cloud(points: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        Self::new(Variant::DiscreteCloud { points, weights })
    }

    pub fn degenerate(base: DistributionSpec, dup_rate: f64, collinear_rate: f64) -> Result<Self> {
        Self::new(Variant::DegenerateSampler {
            base: Box::new(base.variant),
            dup_rate,
            collinear_rate,
        })
        .map(|s| s.with_center(base.center).with_precision(base.precision_bits))
    }

    pub fn with_center(mut self, center: Vec<f64>) -> Self {
        self.center = center;
        self
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision_bits = bits;
        self
    }

    pub fn dim(&self) -> usize {
        self.variant.dim()
    }

    pub fn center_point(&self) -> Point {
        Point::from_f64(&self.center, self.precision_bits)
    }

    fn draw_at(&self, seed: u64, index: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        self.variant.draw(&mut rng, &self.center)
    }

    /// Floating draws without post-processing, for Monte Carlo probes.
    pub fn draw_f64(&self, n: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
        if self.center.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: self.center.len() });
        }
        Ok((0..n as u64).into_par_iter().map(|i| self.draw_at(seed, i)).collect())
    }

    /// Reads a key=value spec file; returns the spec and its `seed`, if any.
    pub fn read(path: &Path) -> Result<(Self, Option<u64>)> {
        Self::from_key_values(&KeyValues::read(path)?)
    }

    /// Keys: `variant`, `dim`, `radius`, `m0`, `base`, `center`, `points`,
    /// `weights`, `dup_rate`, `collinear_rate`, `seed`, `precision_bits`.
    pub fn from_key_values(kv: &KeyValues) -> Result<(Self, Option<u64>)> {
        let variant = parse_variant(kv, kv.require("variant")?)?;
        let mut spec = Self::new(variant)?;
        if let Some(c) = kv.list::<f64>("center")? {
            if c.len() != spec.dim() {
                return Err(Error::DimensionMismatch { expected: spec.dim(), found: c.len() });
            }
            spec.center = c;
        }
        if let Some(bits) = kv.get::<u32>("precision_bits")? {
            spec.precision_bits = bits;
        }
        Ok((spec, kv.get::<u64>("seed")?))
    }
}

fn parse_variant(kv: &KeyValues, name: &str) -> Result<Variant> {
    let dim = || -> Result<usize> {
        kv.get::<usize>("dim")?.ok_or_else(|| Error::Parse { line: 0, msg: "missing key `dim`".into() })
    };
    let radius = || -> Result<f64> { Ok(kv.get::<f64>("radius")?.unwrap_or(1.0)) };
    let base = |default: &str| -> Result<Box<Variant>> {
        let b = kv.str("base").unwrap_or(default);
        if b == name {
            return Err(Error::Parse { line: 0, msg: format!("`{name}` cannot be its own base") });
        }
        parse_variant(kv, b).map(Box::new)
    };
    Ok(match name {
        "uniform_ball" => Variant::UniformBall { dim: dim()?, radius: radius()? },
        "uniform_sphere" => Variant::UniformSphere { dim: dim()?, radius: radius()? },
        "ball_sphere_mixture" => Variant::BallSphereMixture { dim: dim()? },
        "atom_on_hyperplane" => Variant::AtomOnHyperplane {
            m0: kv.get::<f64>("m0")?.unwrap_or(0.4),
            base: base("uniform_ball")?,
        },
        "discrete_cloud" => {
            let points: Vec<Vec<f64>> = kv
                .points("points")?
                .ok_or_else(|| Error::Parse { line: 0, msg: "missing key `points`".into() })?
                .iter()
                .map(Point::to_f64)
                .collect();
            let weights = kv.list::<f64>("weights")?.unwrap_or_else(|| vec![1.0; points.len()]);
            Variant::DiscreteCloud { points, weights }
        }
        "degenerate" | "degenerate_sampler" => Variant::DegenerateSampler {
            base: base("uniform_ball")?,
            dup_rate: kv.get::<f64>("dup_rate")?.unwrap_or(0.0),
            collinear_rate: kv.get::<f64>("collinear_rate")?.unwrap_or(0.0),
        },
        other => {
            return Err(Error::Parse { line: 0, msg: format!("unknown variant `{other}`") });
        }
    })
}

/// `n` draws snapped to rationals at the spec's precision.
///
/// `DegenerateSampler` then replaces each point after the first by a copy of
/// an earlier point with probability `dup_rate`, and moves the third point of
/// each consecutive triple onto the line through the first two with
/// probability `collinear_rate`. Both steps are exact.
pub fn sample(spec: &DistributionSpec, n: usize, seed: u64) -> Result<DataSet> {
    if n == 0 {
        return Err(Error::EmptyDataSet);
    }
    let bits = spec.precision_bits;
    let mut points: Vec<Point> = spec
        .draw_f64(n, seed)?
        .iter()
        .map(|c| Point::from_f64(c, bits))
        .collect();
    if let Variant::DegenerateSampler { dup_rate, collinear_rate, .. } = &spec.variant {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::MAX);
        for i in 1..n {
            if rng.gen_bool(*dup_rate) {
                points[i] = points[rng.gen_range(0..i)].clone();
            }
        }
        for start in (0..n.saturating_sub(2)).step_by(3) {
            if !rng.gen_bool(*collinear_rate) {
                continue;
            }
            let (a, b) = (&points[start], &points[start + 1]);
            if a == b {
                continue;
            }
            let t = snap(rng.gen_range(-1.0..2.0), 20);
            let dir: Vec<_> = b.coords().iter().zip(a.coords()).map(|(x, y)| x - y).collect();
            points[start + 2] = a.offset(&dir, &t);
        }
    }
    Ok(DataSet::new(points)?.with_precision(Some(bits)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Smooth,
    NonSmooth,
    Continuous,
    Discontinuous,
    Inconclusive,
}

impl Verdict {
    /// Whether the verdict supports the median's consistency conditions.
    pub fn is_favorable(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::Smooth | Verdict::Continuous)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Smooth => "SMOOTH",
            Verdict::NonSmooth => "NON-SMOOTH",
            Verdict::Continuous => "CONTINUOUS",
            Verdict::Discontinuous => "DISCONTINUOUS",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        f.write_str(s)
    }
}

/// Outcome of a Monte Carlo probe.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub statistic: String,
    pub estimate: f64,
    pub half_width: f64,
    pub n: usize,
    pub threshold: f64,
    pub verdict: Verdict,
    pub witness: Option<Vec<f64>>,
    /// Intermediate estimates, e.g. per width or per radius.
    pub details: Vec<(String, f64)>,
}

impl std::fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {:.4} ± {:.4} (N={}, threshold {:.4}) {}",
            self.statistic, self.estimate, self.half_width, self.n, self.threshold, self.verdict
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness {w:?}")?;
        }
        Ok(())
    }
}

pub fn proportion_half_width(p: f64, n: usize) -> f64 {
    1.96 * (p * (1.0 - p) / n as f64).sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Where a probe takes its draws from.
pub enum ProbeSource<'a> {
    Spec(&'a DistributionSpec),
    Data(&'a DataSet),
}

impl ProbeSource<'_> {
    fn draws(&self, n: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
        match self {
            ProbeSource::Spec(s) => s.draw_f64(n, seed),
            ProbeSource::Data(ds) => Ok(ds.points().iter().map(Point::to_f64).collect()),
        }
    }
}

/// Minimum over a direction net of `P̂(u·X >= u·θ₀)`; PASS iff it is at
/// least `1/2 - 3·half_width`.
pub fn halfspace_symmetry_probe(
    source: ProbeSource<'_>,
    theta0: &[f64],
    directions: usize,
    n: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if directions == 0 {
        return Err(Error::Precondition("need at least one direction".into()));
    }
    let xs = source.draws(n, seed)?;
    let net = direction_net(theta0.len(), directions, seed);
    let fractions: Vec<f64> = net
        .par_iter()
        .map(|u| {
            let t = dot(u, theta0);
            xs.iter().filter(|x| dot(u, x) >= t).count() as f64 / xs.len() as f64
        })
        .collect();
    let (arg, min) = argmin(&fractions);
    let hw = proportion_half_width(min, xs.len());
    Ok(ProbeReport {
        statistic: "min P(u.X >= u.theta0)".into(),
        estimate: min,
        half_width: hw,
        n: xs.len(),
        threshold: 0.5 - 3.0 * hw,
        verdict: if min >= 0.5 - 3.0 * hw { Verdict::Pass } else { Verdict::Fail },
        witness: Some(net[arg].clone()),
        details: Vec::new(),
    })
}

/// Exact symmetry of an empirical law: every closed halfspace with `θ₀` on
/// its boundary holds at least half the sample, i.e. `D(θ₀) >= 1/2`.
pub fn empirical_symmetry(ds: &DataSet, theta0: &Point) -> Result<(bool, DepthValue)> {
    let (depth, _) = tukey_depth(theta0, ds)?;
    Ok((depth >= DepthValue::new(1, 2), depth))
}

fn argmin(v: &[f64]) -> (usize, f64) {
    v.iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bv), (i, &x)| if x < bv { (i, x) } else { (bi, bv) })
}

pub const SMOOTHNESS_THRESHOLD: f64 = 0.01;

/// Slab masses `P̂(|u·X - u·x₀| <= w)` over a direction net for decreasing
/// widths; SMOOTH iff the largest mass at the final width is at most the
/// threshold, NON-SMOOTH with the maximizing direction otherwise.
pub fn smoothness_probe(
    spec: &DistributionSpec,
    x0: &[f64],
    widths: &[f64],
    directions: usize,
    n: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if widths.is_empty() || widths.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Precondition("widths must be strictly decreasing".into()));
    }
    if directions == 0 {
        return Err(Error::Precondition("need at least one direction".into()));
    }
    let xs = spec.draw_f64(n, seed)?;
    let net = direction_net(x0.len(), directions, seed);
    let mut details = Vec::new();
    let mut last = (0, 0.0);
    for &w in widths {
        let masses: Vec<f64> = net
            .par_iter()
            .map(|u| {
                let t = dot(u, x0);
                xs.iter().filter(|x| (dot(u, x) - t).abs() <= w).count() as f64 / n as f64
            })
            .collect();
        let (i, m) = masses
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &x)| if x > bv { (i, x) } else { (bi, bv) });
        details.push((format!("max slab mass at width {w}"), m));
        last = (i, m);
    }
    let smooth = last.1 <= SMOOTHNESS_THRESHOLD;
    Ok(ProbeReport {
        statistic: "max slab mass".into(),
        estimate: last.1,
        half_width: proportion_half_width(last.1, n),
        n,
        threshold: SMOOTHNESS_THRESHOLD,
        verdict: if smooth { Verdict::Smooth } else { Verdict::NonSmooth },
        witness: if smooth { None } else { Some(net[last.0].clone()) },
        details,
    })
}

pub const CONTINUITY_TOLERANCE: f64 = 0.03;

/// Population depth at `θ₀` and at `θ₀ + r·dir` for decreasing radii.
///
/// With a known hyperplane mass `m0`, DISCONTINUOUS iff every side estimate
/// is at most `(1 - m0)/2 + tol` while the center is at least `1/2 - tol`.
/// Otherwise CONTINUOUS iff the gap at the smallest radius is within `tol`.
pub fn depth_continuity_probe(
    spec: &DistributionSpec,
    theta0: &[f64],
    direction: &[f64],
    radii: &[f64],
    n: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if radii.is_empty() || radii.windows(2).any(|r| r[1] >= r[0]) || radii.iter().any(|r| *r <= 0.0) {
        return Err(Error::Precondition("radii must be positive and strictly decreasing".into()));
    }
    let norm = dot(direction, direction).sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let xs = spec.draw_f64(n, seed)?;
    let net = direction_net(theta0.len(), 360, seed);
    let center = population_depth_from_sample(&xs, theta0, &net).estimate;
    let mut details = vec![("center".to_string(), center)];
    let mut sides = Vec::new();
    for &r in radii {
        let x: Vec<f64> = theta0.iter().zip(direction).map(|(t, u)| t + r * u / norm).collect();
        let e = population_depth_from_sample(&xs, &x, &net).estimate;
        details.push((format!("radius {r}"), e));
        sides.push(e);
    }
    let tol = CONTINUITY_TOLERANCE;
    let last = *sides.last().expect("nonempty radii");
    let (verdict, threshold, estimate) = match spec.variant.hyperplane_mass() {
        Some(m0) => {
            let cap = (1.0 - m0) / 2.0 + tol;
            let worst = sides.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let v = if worst <= cap && center >= 0.5 - tol {
                Verdict::Discontinuous
            } else {
                Verdict::Inconclusive
            };
            (v, cap, worst)
        }
        None => {
            let gap = (last - center).abs();
            let v = if gap <= tol { Verdict::Continuous } else { Verdict::Discontinuous };
            (v, tol, gap)
        }
    };
    Ok(ProbeReport {
        statistic: "population depth along approach".into(),
        estimate,
        half_width: proportion_half_width(center, n),
        n,
        threshold,
        verdict,
        witness: Some(direction.to_vec()),
        details,
    })
}

/// Snapped sample norms, for checking the mixture's support.
pub fn norms(ds: &DataSet) -> Vec<f64> {
    ds.points()
        .iter()
        .map(|p| p.coords().iter().map(|c| to_f64(c).powi(2)).sum::<f64>().sqrt())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::affine_dimension;

    #[test]
    fn sampling_is_deterministic() {
        let spec = DistributionSpec::uniform_ball(2, 1.0).unwrap();
        let a = sample(&spec, 50, 9).unwrap();
        let b = sample(&spec, 50, 9).unwrap();
        assert_eq!(a.points(), b.points());
        let c = sample(&spec, 60, 9).unwrap();
        assert_eq!(&c.points()[..50], a.points());
        assert_ne!(sample(&spec, 50, 10).unwrap().points(), a.points());
    }

    #[test]
    fn sphere_norms() {
        let ds = sample(&DistributionSpec::uniform_sphere(2, 2.0).unwrap(), 1000, 1).unwrap();
        assert!(norms(&ds).iter().all(|r| (r - 2.0).abs() < 2f64.powi(-50)));
    }

    #[test]
    fn mixture_splits_evenly() {
        let ds = sample(&DistributionSpec::ball_sphere_mixture(2).unwrap(), 10_000, 3).unwrap();
        let r = norms(&ds);
        let inner = r.iter().filter(|r| **r <= 1.0).count() as f64 / 1e4;
        assert!((inner - 0.5).abs() < 0.02, "{inner}");
        assert!(r.iter().all(|r| *r <= 1.0 || (r - 2.0).abs() < 1e-9));
    }

    #[test]
    fn atom_mass_is_exact_on_the_plane() {
        let base = DistributionSpec::uniform_ball(2, 1.0).unwrap();
        let spec = DistributionSpec::atom_on_hyperplane(0.4, base).unwrap();
        let ds = sample(&spec, 5000, 4).unwrap();
        let on = ds.points().iter().filter(|p| p.coords()[0] == crate::geometry::int(0)).count() as f64 / 5000.0;
        let sigma = (0.4f64 * 0.6 / 5000.0).sqrt();
        assert!((on - 0.4).abs() <= 3.0 * sigma, "{on}");
    }

    #[test]
    fn degenerate_sampler_breaks_general_position() {
        let base = DistributionSpec::uniform_ball(2, 1.0).unwrap();
        let spec = DistributionSpec::degenerate(base, 0.2, 0.3).unwrap();
        let ds = sample(&spec, 100, 5).unwrap();
        let mut pts = ds.points().to_vec();
        pts.sort();
        assert!(pts.windows(2).any(|w| w[0] == w[1]));
        assert!(!ds.in_general_position());
        assert_eq!(affine_dimension(&ds), 2);
        let bad = DistributionSpec::degenerate(DistributionSpec::uniform_ball(2, 1.0).unwrap(), 1.5, 0.0);
        assert!(matches!(bad, Err(Error::InvalidRate { name: "dup_rate", .. })));
    }

    #[test]
    fn symmetry_probe_fails_on_lopsided_cloud() {
        let cloud =
            DistributionSpec::discrete_cloud(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]], vec![1.0; 3]).unwrap();
        let r = halfspace_symmetry_probe(ProbeSource::Spec(&cloud), &[2.0, 0.0], 64, 20_000, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!((r.estimate - 1.0 / 3.0).abs() < 0.03);
    }

    #[test]
    fn spec_file_parsing() {
        let kv = KeyValues::parse(
            "variant = degenerate\nbase = uniform_ball\ndim = 2\nradius = 1\ndup_rate = 0.3\ncollinear_rate = 0.2\nseed = 11\nprecision_bits = 40\n",
        )
        .unwrap();
        let (spec, seed) = DistributionSpec::from_key_values(&kv).unwrap();
        assert_eq!(seed, Some(11));
        assert_eq!(spec.precision_bits, 40);
        assert!(matches!(spec.variant, Variant::DegenerateSampler { dup_rate, .. } if dup_rate == 0.3));
        let bad = KeyValues::parse("variant = nope\n").unwrap();
        assert!(DistributionSpec::from_key_values(&bad).is_err());
    }

    #[test]
    fn symmetrized_sample_is_exactly_symmetric() {
        let ds = sample(&DistributionSpec::uniform_ball(2, 1.0).unwrap(), 15, 2).unwrap();
        let theta = Point::from_ints(&[1, 0]);
        let (ok, _) = empirical_symmetry(&ds.symmetrized(&theta).unwrap(), &theta).unwrap();
        assert!(ok);
    }
}
