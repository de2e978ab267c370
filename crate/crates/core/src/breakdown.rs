//! Addition breakdown of the Tukey median.
//!
//! The deepest level `λ*` gives the lower bound `λ*/(1 + λ*)`. Projecting
//! onto the orthocomplement of a direction `u` gives the deepest projected
//! level `λ_u`, and placing `⌈nλ_u⌉` copies of a point far out along `u`
//! drags the median away, so `inf_u λ_u/(1 + inf_u λ_u)` bounds from above.
//!
//! "Breakdown" is observed at finite scale: the contaminated median must
//! leave twice the enclosing ball of the sample and its distance must keep
//! growing at least half as fast as the placement distance.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::depth::{optimal_direction_cone, tukey_depth, DepthValue};
use crate::error::{Error, Result};
use crate::geometry::{
    affine_dimension, convex_hull_contains, cross3, dot, int, sub, to_f64, DataSet, Direction, Point, Polytope,
    Scalar,
};
use crate::grid::{self, cmp_angle};
use crate::io::format_rational;
use crate::regions::{depth_region, max_depth_within, max_projected_count, median_region, median_region_with, MedianAverage};

/// `u` together with an exact orthogonal basis of its orthocomplement.
///
/// Columns are orthogonal but not unit length. Depth is invariant under
/// positive rescaling of the projected axes, so nothing irrational is needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionFrame {
    pub u: Direction,
    pub basis: Vec<Vec<Scalar>>,
}

impl ProjectionFrame {
    /// Coordinates `A_u^T x` in the orthocomplement.
    pub fn project(&self, x: &Point) -> Point {
        Point::new(self.basis.iter().map(|b| dot(b, x.coords())).collect())
    }

    /// The point of the orthocomplement whose projection is `z`.
    pub fn lift(&self, z: &Point) -> Point {
        let d = self.u.dim();
        let mut out = vec![Scalar::zero(); d];
        for (b, c) in self.basis.iter().zip(z.coords()) {
            let t = c / dot(b, b);
            for (o, bk) in out.iter_mut().zip(b) {
                *o += bk * &t;
            }
        }
        Point::new(out)
    }
}

/// Gram-Schmidt on the standard basis, orthogonal to `u`, without normalising.
pub fn projection_frame(u: &Direction) -> Result<ProjectionFrame> {
    let d = u.dim();
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let mut done: Vec<Vec<Scalar>> = vec![u.coords().to_vec()];
    for k in 0..d {
        let mut v: Vec<Scalar> = (0..d).map(|i| if i == k { int(1) } else { int(0) }).collect();
        for w in &done {
            let t = dot(&v, w) / dot(w, w);
            for (vi, wi) in v.iter_mut().zip(w) {
                *vi -= &t * wi;
            }
        }
        if v.iter().any(|c| !c.is_zero()) {
            done.push(v);
        }
    }
    done.remove(0);
    debug_assert_eq!(done.len(), d - 1);
    Ok(ProjectionFrame { u: u.clone(), basis: done })
}

pub fn project_dataset(ds: &DataSet, frame: &ProjectionFrame) -> Result<DataSet> {
    if frame.u.dim() != ds.dim() {
        return Err(Error::DimensionMismatch {
            expected: ds.dim(),
            found: frame.u.dim(),
        });
    }
    DataSet::new(ds.points().iter().map(|p| frame.project(p)).collect())
}

/// Deepest level of the projection onto `u`'s orthocomplement.
///
/// Depth is affine invariant, so any integer basis of the orthocomplement
/// gives the same level as the orthonormal frame with smaller numbers.
pub fn projected_lambda(ds: &DataSet, u: &Direction) -> Result<DepthValue> {
    if u.dim() != ds.dim() {
        return Err(Error::DimensionMismatch {
            expected: ds.dim(),
            found: u.dim(),
        });
    }
    let basis = integer_complement(u);
    let coords = |p: &Point| -> Vec<Scalar> { basis.iter().map(|b| dot(b, p.coords())).collect() };
    let k = match basis.len() {
        1 => {
            let mut xs: Vec<Scalar> = ds.points().iter().map(|p| coords(p).remove(0)).collect();
            xs.sort();
            max_projected_count(&xs.iter().collect::<Vec<_>>())
        }
        2 => {
            let proj = DataSet::new(ds.points().iter().map(|p| Point::new(coords(p))).collect())?;
            median_region_with(&proj, MedianAverage::VertexAverage)?.lambda_star.count as usize
        }
        _ => return Err(Error::UnsupportedDimension(ds.dim())),
    };
    Ok(DepthValue::new(k as u64, ds.len() as u64))
}

/// Integer vectors spanning `u`'s orthocomplement, for `d` in 2 and 3.
fn integer_complement(u: &Direction) -> Vec<Vec<Scalar>> {
    let w: Vec<Scalar> = grid::scale_to_integers(&[u.coords().to_vec()])
        .remove(0)
        .into_iter()
        .map(Scalar::from_integer)
        .collect();
    match w.len() {
        2 => vec![vec![-w[1].clone(), w[0].clone()]],
        3 => {
            // The axis least aligned with `u` is never parallel to it.
            let k = (0..3).min_by_key(|&k| w[k].abs()).expect("three axes");
            let mut e = vec![Scalar::zero(); 3];
            e[k] = Scalar::one();
            let b1 = cross3(&e, &w);
            let b2 = cross3(&w, &b1);
            vec![b1, b2]
        }
        _ => Vec::new(),
    }
}

/// Deepest count of a projected sample and its deepest region.
fn deepest_projected(proj: &DataSet) -> Result<(usize, ProjectedRegion)> {
    match proj.dim() {
        1 => {
            let mut xs: Vec<&Scalar> = proj.points().iter().map(|p| &p.coords()[0]).collect();
            xs.sort();
            let n = xs.len();
            let k = max_projected_count(&xs);
            Ok((k, ProjectedRegion::Interval(xs[k - 1].clone(), xs[n - k].clone())))
        }
        2 => {
            let m = median_region(proj)?;
            let k = m.lambda_star.count as usize;
            Ok((k, ProjectedRegion::Polygon(m.region, m.median)))
        }
        d => Err(Error::UnsupportedDimension(d + 1)),
    }
}

enum ProjectedRegion {
    Interval(Scalar, Scalar),
    Polygon(Polytope, Point),
}

fn check_full(ds: &DataSet) -> Result<()> {
    let d = ds.dim();
    if !(2..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let found = affine_dimension(ds);
    if found < d {
        return Err(Error::DegenerateAffineDimension { expected: d, found });
    }
    Ok(())
}

/// `λ*/(1 + λ*)` for the deepest sample level `λ*`.
pub fn lower_bound(ds: &DataSet) -> Result<Scalar> {
    Ok(median_region(ds)?.lambda_star.breakdown_ratio())
}

#[derive(Clone, Debug)]
pub struct DirectionSearchConfig {
    /// Random rational directions tried before anything else.
    pub random: usize,
    /// Largest planar sample for which every critical direction is tried.
    pub exhaustive_limit: usize,
    /// Directions sampled when the exhaustive set is out of reach.
    pub net_size: usize,
    pub seed: u64,
}

impl Default for DirectionSearchConfig {
    fn default() -> Self {
        DirectionSearchConfig {
            random: 8,
            exhaustive_limit: 60,
            net_size: 64,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct UpperBound {
    pub ratio: Scalar,
    pub lambda: DepthValue,
    pub direction: Direction,
    /// True when `lambda` is certified to be the infimum over all directions.
    pub exact: bool,
    pub candidates: usize,
}

/// `inf_u λ_u / (1 + inf_u λ_u)` over a candidate set of directions.
///
/// In the plane every projection has deepest count at least `⌈n/2⌉`, so a
/// direction reaching it settles the infimum. Otherwise `λ_u` is constant
/// between consecutive directions parallel to a difference `X_j - X_i`, and
/// those directions plus one per gap are tried when `n` is small enough.
pub fn upper_bound(ds: &DataSet, search: &DirectionSearchConfig) -> Result<UpperBound> {
    check_full(ds)?;
    let n = ds.len();
    let d = ds.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    // Axes first, so ties resolve to readable directions.
    let first: Vec<Direction> = (0..d)
        .map(|k| {
            let mut e = vec![0; d];
            e[k] = 1;
            Direction::from_ints(&e).expect("unit")
        })
        .chain((0..search.random).map(|_| random_direction(&mut rng, d)))
        .collect();
    let mut tried = 0;
    let mut best = evaluate(ds, &first, &mut tried)?;
    if d == 2 {
        let floor = n.div_ceil(2);
        let mut exact = best.1 == floor;
        if !exact {
            let more = if n <= search.exhaustive_limit {
                exact = true;
                critical_directions(ds)
            } else {
                (0..search.net_size).map(|_| random_direction(&mut rng, d)).collect()
            };
            best = best.min_by_count(evaluate(ds, &more, &mut tried)?);
        }
        return Ok(finish(best, n, exact, tried));
    }
    let mut more = difference_crosses(ds, &mut rng, search.net_size.max(1) * 4);
    more.extend((0..search.net_size).map(|_| random_direction(&mut rng, d)));
    best = best.min_by_count(evaluate(ds, &more, &mut tried)?);
    Ok(finish(best, n, false, tried))
}

fn finish(best: (Direction, usize), n: usize, exact: bool, candidates: usize) -> UpperBound {
    let lambda = DepthValue::new(best.1 as u64, n as u64);
    UpperBound {
        ratio: lambda.breakdown_ratio(),
        lambda,
        direction: best.0,
        exact,
        candidates,
    }
}

trait MinByCount {
    fn min_by_count(self, other: Self) -> Self;
}

impl MinByCount for (Direction, usize) {
    fn min_by_count(self, other: Self) -> Self {
        if other.1 < self.1 {
            other
        } else {
            self
        }
    }
}

/// The direction with the smallest projected count, earliest on ties.
fn evaluate(ds: &DataSet, dirs: &[Direction], tried: &mut usize) -> Result<(Direction, usize)> {
    *tried += dirs.len();
    let counts: Vec<usize> = dirs
        .par_iter()
        .map(|u| projected_lambda(ds, u).map(|l| l.count as usize))
        .collect::<Result<_>>()?;
    let (i, &c) = counts
        .iter()
        .enumerate()
        .min_by_key(|&(i, c)| (*c, i))
        .ok_or_else(|| Error::Precondition("no candidate directions".into()))?;
    Ok((dirs[i].clone(), c))
}

fn random_direction(rng: &mut ChaCha8Rng, d: usize) -> Direction {
    const R: i64 = 1 << 20;
    loop {
        let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-R..=R)).collect();
        if let Ok(u) = Direction::from_ints(&v) {
            return u;
        }
    }
}

/// `u` up to sign: scaled so the first nonzero coordinate is `1`.
fn axis_key(u: &Direction) -> Vec<Scalar> {
    let c = u.canonical();
    let lead = c.iter().find(|x| !x.is_zero()).expect("nonzero");
    if lead.is_negative() {
        c.iter().map(|x| -x).collect()
    } else {
        c
    }
}

/// Planar directions parallel to some difference of sample points, one per
/// axis, and the bisector of each gap between angularly consecutive ones.
pub fn critical_directions(ds: &DataSet) -> Vec<Direction> {
    let mut axes: BTreeSet<Vec<Scalar>> = BTreeSet::new();
    let pts = ds.points();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            if let Ok(v) = Direction::new(sub(pts[j].coords(), pts[i].coords())) {
                axes.insert(axis_key(&v));
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = axes.into_iter().collect();
    let mut ints: Vec<[num_bigint::BigInt; 2]> = grid::scale_to_integers(&rows)
        .iter()
        .map(|r| {
            let g = r[0].gcd(&r[1]);
            let v = [&r[0] / &g, &r[1] / &g];
            // Fold onto angles in [0, π).
            if grid::half(&v) == 1 {
                [-v[0].clone(), -v[1].clone()]
            } else {
                v
            }
        })
        .collect();
    ints.sort_by(cmp_angle);
    let mut out: Vec<Direction> = Vec::with_capacity(2 * ints.len());
    for (k, a) in ints.iter().enumerate() {
        let b = match ints.get(k + 1) {
            Some(b) => b.clone(),
            None => [-ints[0][0].clone(), -ints[0][1].clone()],
        };
        let mid = [&a[0] + &b[0], &a[1] + &b[1]];
        for v in [a.clone(), mid] {
            if let Ok(u) = Direction::new(v.iter().map(|c| Scalar::from_integer(c.clone())).collect()) {
                out.push(u);
            }
        }
    }
    if out.is_empty() {
        out.push(Direction::from_ints(&[1, 0]).expect("nonzero"));
    }
    out
}

/// Cross products of pairs of difference vectors, sampled when too many.
fn difference_crosses(ds: &DataSet, rng: &mut ChaCha8Rng, cap: usize) -> Vec<Direction> {
    let pts = ds.points();
    let mut diffs = Vec::new();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let v = sub(pts[j].coords(), pts[i].coords());
            if v.iter().any(|c| !c.is_zero()) {
                diffs.push(v);
            }
        }
    }
    let pairs = diffs.len() * diffs.len().saturating_sub(1) / 2;
    let mut picks: Vec<(usize, usize)> = Vec::new();
    if pairs <= cap {
        for a in 0..diffs.len() {
            for b in (a + 1)..diffs.len() {
                picks.push((a, b));
            }
        }
    } else {
        while picks.len() < cap {
            let a = rng.gen_range(0..diffs.len());
            let b = rng.gen_range(0..diffs.len());
            if a != b {
                picks.push((a, b));
            }
        }
    }
    let mut seen = BTreeSet::new();
    picks
        .into_iter()
        .filter_map(|(a, b)| Direction::new(cross3(&diffs[a], &diffs[b])).ok())
        .filter(|u| seen.insert(axis_key(u)))
        .collect()
}

/// `m` copies of a far point on the line `{A_u x0 + γu}`.
#[derive(Clone, Debug)]
pub struct ContaminationPlan {
    pub u: Direction,
    pub x0_projected: Point,
    /// `A_u x0`, where the line crosses the orthocomplement.
    pub anchor: Point,
    /// The placement at `distance_scale`.
    pub y0: Point,
    pub m: usize,
    pub distance_scale: Scalar,
    pub lambda_u: DepthValue,
    /// Smallest `γ` that puts `A_u x0 + γu` beyond every sample point along `u`.
    exit: Scalar,
}

impl ContaminationPlan {
    fn new(ds: &DataSet, frame: &ProjectionFrame, x0: Point, m: usize, scale: Scalar, lambda_u: DepthValue) -> Self {
        let u = frame.u.coords();
        let anchor = frame.lift(&x0);
        let top = ds.points().iter().map(|p| dot(u, p.coords())).max().expect("nonempty");
        let norm = u.iter().map(|c| c.abs()).max().expect("nonzero");
        let exit = (top - dot(u, anchor.coords())) / dot(u, u) + Scalar::one() / norm;
        let mut plan = ContaminationPlan {
            u: frame.u.clone(),
            x0_projected: x0,
            anchor,
            y0: Point::origin(u.len()),
            m,
            distance_scale: scale.clone(),
            lambda_u,
            exit,
        };
        plan.y0 = plan.placement(&scale);
        plan
    }

    /// `A_u x0 + γu` with `γ` about `scale / |u|`, never inside the sample hull.
    pub fn placement(&self, scale: &Scalar) -> Point {
        let u = self.u.coords();
        let norm = u.iter().map(|c| c.abs()).max().expect("nonzero");
        let gamma = (scale / norm).max(self.exit.clone());
        self.anchor.offset(u, &gamma)
    }

    pub fn with_m(&self, m: usize) -> Self {
        ContaminationPlan { m, ..self.clone() }
    }

    pub fn with_scale(&self, scale: Scalar) -> Self {
        let mut p = self.clone();
        p.y0 = p.placement(&scale);
        p.distance_scale = scale;
        p
    }

    pub fn contaminated(&self, ds: &DataSet, scale: &Scalar) -> Result<DataSet> {
        ds.with_repeated(&self.placement(scale), self.m)
    }
}

/// Iteration cap of the fallback descent.
pub const DESCENT_CAP: usize = 10_000;
/// The descent stops once no candidate moves it further than this.
pub const DESCENT_GAP: f64 = 1.0 / (1u64 << 40) as f64;

/// Plan for direction `u` with `m = ⌈nλ_u⌉` copies at `distance`.
///
/// `x0` is a point of the projected deepest region from which every other
/// point of that region is strictly cut off by a minimising halfspace.
/// Singletons are taken as is; otherwise a vertex touched alone by one of
/// the region's halfspaces is used, and failing that a descent over the
/// vertices and the barycenter.
pub fn build_attack(ds: &DataSet, u: &Direction, distance: &Scalar) -> Result<ContaminationPlan> {
    check_full(ds)?;
    if !distance.is_positive() {
        return Err(Error::Precondition("distance must be positive".into()));
    }
    let frame = projection_frame(u)?;
    let proj = project_dataset(ds, &frame)?;
    let (k, region) = deepest_projected(&proj)?;
    let x0 = match region {
        // Either end of the interval is cut off from the rest by a ray.
        ProjectedRegion::Interval(a, _) => Point::new(vec![a]),
        ProjectedRegion::Polygon(poly, median) => choose_x0(&proj, &poly, median)?,
    };
    let lambda = DepthValue::new(k as u64, ds.len() as u64);
    Ok(ContaminationPlan::new(ds, &frame, x0, k, distance.clone(), lambda))
}

/// Every endpoint candidate of the projected deepest interval or polygon.
fn x0_candidates(proj: &DataSet) -> Result<(usize, Vec<Point>)> {
    let (k, region) = deepest_projected(proj)?;
    let pts = match region {
        ProjectedRegion::Interval(a, b) if a == b => vec![Point::new(vec![a])],
        ProjectedRegion::Interval(a, b) => vec![Point::new(vec![a]), Point::new(vec![b])],
        ProjectedRegion::Polygon(poly, _) => poly.vertices,
    };
    Ok((k, pts))
}

fn choose_x0(proj: &DataSet, region: &Polytope, median: Point) -> Result<Point> {
    if region.vertices.len() == 1 {
        return Ok(region.vertices[0].clone());
    }
    for v in &region.vertices {
        let alone = region.halfspaces.iter().any(|h| {
            let t = region.tight_vertices(h);
            t.len() == 1 && t[0] == v
        });
        if alone {
            return Ok(v.clone());
        }
    }
    let mut z = median;
    let mut visited = BTreeSet::new();
    for it in 0..DESCENT_CAP {
        if !visited.insert(z.clone()) {
            return Err(Error::DescentDidNotTerminate(it));
        }
        let cone = optimal_direction_cone(&z, proj)?;
        let blocked: Vec<&Point> = region
            .vertices
            .iter()
            .filter(|x| **x != z)
            .filter(|x| {
                let off = sub(x.coords(), z.coords());
                cone.iter().all(|v| !dot(v.coords(), &off).is_positive())
            })
            .collect();
        let far = blocked.iter().map(|x| (sup_dist(x, &z), *x)).max_by(|a, b| a.0.total_cmp(&b.0));
        match far {
            Some((g, x)) if g >= DESCENT_GAP => z = x.clone(),
            _ => return Ok(z),
        }
    }
    Err(Error::DescentDidNotTerminate(DESCENT_CAP))
}

fn sup_dist(a: &Point, b: &Point) -> f64 {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| to_f64(&(x - y)).abs())
        .fold(0.0, f64::max)
}

/// Ball around the bounding-box center through its corners.
#[derive(Clone, Debug)]
struct EnclosingBall {
    center: Vec<f64>,
    radius: f64,
}

impl EnclosingBall {
    fn of(ds: &DataSet) -> Self {
        let (lo, hi) = ds.bounding_box();
        let center: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| to_f64(&((a + b) / int(2)))).collect();
        let radius = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| to_f64(&((b - a) / int(2))).powi(2))
            .sum::<f64>()
            .sqrt();
        EnclosingBall { center, radius }
    }

    /// Distance from `x` to the ball, zero inside it.
    fn gap(&self, x: &Point) -> f64 {
        let r = x
            .to_f64()
            .iter()
            .zip(&self.center)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        (r - self.radius).max(0.0)
    }
}

/// Growth factor demanded per step, relative to the growth of the scale.
pub const ESCAPE_GROWTH: f64 = 0.5;

#[derive(Clone, Debug)]
pub struct AttackCheck {
    /// Deepest contaminated depth over the hull of the clean sample.
    pub sup_depth_inside: DepthValue,
    pub depth_at_y0: DepthValue,
    pub escaped: bool,
    pub scales: Vec<Scalar>,
    /// Distance of the contaminated median from the enclosing ball, per scale.
    pub distances: Vec<f64>,
    /// Contaminated medians, per scale, up to the first that stayed home.
    pub medians: Vec<Point>,
}

/// Exact depth checks at the plan's scale and an escape check at
/// 1, 10 and 100 times it.
pub fn verify_attack(ds: &DataSet, plan: &ContaminationPlan) -> Result<AttackCheck> {
    if plan.u.dim() != ds.dim() {
        return Err(Error::DimensionMismatch {
            expected: ds.dim(),
            found: plan.u.dim(),
        });
    }
    if convex_hull_contains(ds, &plan.y0)? {
        return Err(Error::Precondition("placement lies inside the sample hull".into()));
    }
    let cont = plan.contaminated(ds, &plan.distance_scale)?;
    let hull = depth_region(ds, DepthValue::new(1, ds.len() as u64))?;
    let (sup, _) = max_depth_within(&cont, &hull)?;
    let (at_y0, _) = tukey_depth(&plan.y0, &cont)?;
    let scales: Vec<Scalar> = [1, 10, 100].iter().map(|f| &plan.distance_scale * int(*f)).collect();
    let (distances, medians) = escape_distances(ds, plan, &scales)?;
    let escaped = escapes(&EnclosingBall::of(ds), &scales, &distances);
    Ok(AttackCheck {
        sup_depth_inside: sup,
        depth_at_y0: at_y0,
        escaped,
        scales,
        distances,
        medians,
    })
}

fn escape_distances(ds: &DataSet, plan: &ContaminationPlan, scales: &[Scalar]) -> Result<(Vec<f64>, Vec<Point>)> {
    let ball = EnclosingBall::of(ds);
    let mut out = Vec::with_capacity(scales.len());
    let mut medians = Vec::with_capacity(scales.len());
    for s in scales {
        let t = median_region(&plan.contaminated(ds, s)?)?.median;
        let g = ball.gap(&t);
        out.push(g);
        medians.push(t);
        // Later scales cannot rescue a median that stayed home.
        if g <= ball.radius {
            break;
        }
    }
    Ok((out, medians))
}

fn escapes(ball: &EnclosingBall, scales: &[Scalar], distances: &[f64]) -> bool {
    if distances.len() < scales.len() || distances.is_empty() || distances[0] <= ball.radius {
        return false;
    }
    (1..scales.len()).all(|i| {
        let ratio = to_f64(&(&scales[i] / &scales[i - 1]));
        distances[i] >= ESCAPE_GROWTH * ratio * distances[i - 1]
    })
}

/// Largest sample handled by the exhaustive search.
pub const EXHAUSTIVE_MAX_N: usize = 12;

#[derive(Clone, Debug)]
pub struct BreakdownReport {
    pub n: usize,
    pub d: usize,
    pub lower: Scalar,
    pub upper: Scalar,
    pub upper_exact: bool,
    pub exact_m: Option<usize>,
    pub witness_plan: Option<ContaminationPlan>,
}

impl BreakdownReport {
    /// `m/(n + m)` for the smallest escaping `m`.
    pub fn ratio(&self) -> Option<Scalar> {
        self.exact_m.map(|m| Scalar::new((m as i64).into(), ((self.n + m) as i64).into()))
    }

    /// Whether the bounds pinch and the witness sits between them.
    pub fn certified(&self) -> bool {
        self.lower == self.upper && self.ratio().as_ref() == Some(&self.lower)
    }

    pub const CSV_HEADER: [&'static str; 9] = ["n", "d", "lower", "upper", "exact_m", "attack_u", "m", "scale", "escaped"];

    pub fn csv_record(&self) -> Vec<String> {
        let plan = self.witness_plan.as_ref();
        vec![
            self.n.to_string(),
            self.d.to_string(),
            format_rational(&self.lower),
            format_rational(&self.upper),
            self.exact_m.map_or("unknown".into(), |m| m.to_string()),
            plan.map_or(String::new(), |p| {
                p.u.coords().iter().map(format_rational).collect::<Vec<_>>().join(" ")
            }),
            plan.map_or(String::new(), |p| p.m.to_string()),
            plan.map_or(String::new(), |p| format_rational(&p.distance_scale)),
            self.exact_m.is_some().to_string(),
        ]
    }
}

pub fn write_reports_csv<W: std::io::Write>(w: W, reports: &[BreakdownReport]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(BreakdownReport::CSV_HEADER)?;
    for r in reports {
        wr.write_record(r.csv_record())?;
    }
    wr.flush()?;
    Ok(())
}

/// Default scale schedule, three decades.
pub fn default_scales() -> Vec<Scalar> {
    [1_000, 10_000, 100_000].iter().map(|&s| int(s)).collect()
}

/// Smallest `m <= m_max` for which some structured plan escapes at every
/// scale of `scales`.
///
/// Plans put `x0` at each end of the projected deepest interval for every
/// critical direction and its opposite, plus the projected centroid along
/// each coordinate axis. Values of `m` below `nλ*` are skipped: the lower
/// bound rules them out. In one dimension the median escapes exactly when
/// `m >= n`.
pub fn exact_breakdown(ds: &DataSet, m_max: usize, scales: &[Scalar]) -> Result<BreakdownReport> {
    let n = ds.len();
    let d = ds.dim();
    let lower = lower_bound(ds)?;
    if d == 1 {
        let half = Scalar::new(1.into(), 2.into());
        return Ok(BreakdownReport {
            n,
            d,
            lower,
            upper: half,
            upper_exact: true,
            exact_m: (n <= m_max).then_some(n),
            witness_plan: None,
        });
    }
    if d != 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::Precondition(format!("exhaustive search needs n <= {EXHAUSTIVE_MAX_N}, got {n}")));
    }
    if scales.is_empty() {
        return Err(Error::Precondition("empty scale schedule".into()));
    }
    let ub = upper_bound(ds, &DirectionSearchConfig::default())?;
    let plans = plan_family(ds, &scales[0])?;
    let ball = EnclosingBall::of(ds);
    let clean = median_region(ds)?;
    let start = clean.lambda_star.count as usize;
    let mut found = None;
    for m in start.max(1)..=m_max {
        let hit = plans.par_iter().find_first(|p| {
            let p = p.with_m(m);
            // Outside the hull nothing is deeper than m, so a deeper clean
            // median pins the contaminated one inside.
            let pinned = p.contaminated(ds, &scales[0]).map_or(true, |c| {
                std::iter::once(&clean.median)
                    .chain(ds.points())
                    .any(|x| tukey_depth(x, &c).map_or(true, |(dv, _)| dv.count as usize > m))
            });
            !pinned && escape_distances(ds, &p, scales).is_ok_and(|(dist, _)| escapes(&ball, scales, &dist))
        });
        if let Some(p) = hit {
            found = Some((m, p.with_m(m)));
            break;
        }
    }
    Ok(BreakdownReport {
        n,
        d,
        lower,
        upper: ub.ratio,
        upper_exact: ub.exact,
        exact_m: found.as_ref().map(|f| f.0),
        witness_plan: found.map(|f| f.1),
    })
}

fn plan_family(ds: &DataSet, scale: &Scalar) -> Result<Vec<ContaminationPlan>> {
    let mut dirs: Vec<Direction> = Vec::new();
    for u in critical_directions(ds) {
        dirs.push(u.neg());
        dirs.push(u);
    }
    let mut with_lambda: Vec<(usize, usize, Direction)> = Vec::new();
    for (i, u) in dirs.into_iter().enumerate() {
        let l = projected_lambda(ds, &u)?.count as usize;
        with_lambda.push((l, i, u));
    }
    with_lambda.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let mut plans = Vec::new();
    for (_, _, u) in with_lambda {
        let frame = projection_frame(&u)?;
        let proj = project_dataset(ds, &frame)?;
        let (k, xs) = x0_candidates(&proj)?;
        let lambda = DepthValue::new(k as u64, ds.len() as u64);
        for x0 in xs {
            plans.push(ContaminationPlan::new(ds, &frame, x0, k, scale.clone(), lambda));
        }
    }
    let centroid = Point::centroid(ds.points()).expect("nonempty");
    for axis in 0..ds.dim() {
        for sign in [1, -1] {
            let mut v = vec![0; ds.dim()];
            v[axis] = sign;
            let frame = projection_frame(&Direction::from_ints(&v)?)?;
            let lambda = projected_lambda(ds, &frame.u)?;
            let x0 = frame.project(&centroid);
            plans.push(ContaminationPlan::new(ds, &frame, x0, lambda.count as usize, scale.clone(), lambda));
        }
    }
    Ok(plans)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    fn ds_a() -> DataSet {
        DataSet::from_ints(&[&[0, 0], &[2, 0], &[1, 1], &[1, 1]]).unwrap()
    }

    fn ds_b() -> DataSet {
        DataSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    fn dir(v: &[i64]) -> Direction {
        Direction::from_ints(v).unwrap()
    }

    #[test]
    fn frames_are_orthogonal() {
        assert_eq!(projection_frame(&dir(&[0, 1])).unwrap().basis, vec![vec![int(1), int(0)]]);
        let f = projection_frame(&dir(&[1, 1])).unwrap();
        assert_eq!(f.basis[0][0], -f.basis[0][1].clone());
        let f = projection_frame(&dir(&[1, 0, 0])).unwrap();
        assert_eq!(f.basis, vec![vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]]);
        let f = projection_frame(&dir(&[3, -1, 2])).unwrap();
        assert_eq!(f.basis.len(), 2);
        assert!(dot(&f.basis[0], &f.basis[1]).is_zero());
        for b in &f.basis {
            assert!(dot(b, f.u.coords()).is_zero());
        }
        let z = Point::new(vec![ratio(1, 3), int(-2)]);
        assert_eq!(f.project(&f.lift(&z)), z);
        assert!(projection_frame(&dir(&[1])).is_err());
    }

    #[test]
    fn projections_of_ds_a() {
        let f = projection_frame(&dir(&[0, 1])).unwrap();
        let p = project_dataset(&ds_a(), &f).unwrap();
        let xs: Vec<Scalar> = p.points().iter().map(|q| q.coords()[0].clone()).collect();
        assert_eq!(xs, vec![int(0), int(2), int(1), int(1)]);
        assert_eq!(projected_lambda(&ds_a(), &dir(&[0, 1])).unwrap(), DepthValue::new(3, 4));
        assert_eq!(projected_lambda(&ds_a(), &dir(&[1, 0])).unwrap(), DepthValue::new(2, 4));
        let five = DataSet::from_ints(&[&[0, 0], &[3, 1], &[1, 4], &[5, 2], &[2, 7]]).unwrap();
        assert_eq!(projected_lambda(&five, &dir(&[7, 3])).unwrap(), DepthValue::new(3, 5));
    }

    #[test]
    fn symmetric_sets_project_symmetrically() {
        let base = DataSet::from_ints(&[&[1, 0], &[2, 3], &[-1, 5]]).unwrap();
        let sym = base.symmetrized(&Point::origin(2)).unwrap();
        let f = projection_frame(&dir(&[2, 1])).unwrap();
        let mut xs: Vec<Scalar> = project_dataset(&sym, &f).unwrap().points().iter().map(|q| q.coords()[0].clone()).collect();
        let mut neg: Vec<Scalar> = xs.iter().map(|x| -x).collect();
        xs.sort();
        neg.sort();
        assert_eq!(xs, neg);
    }

    #[test]
    fn bounds_pinch_on_small_sets() {
        let third = ratio(1, 3);
        assert_eq!(lower_bound(&ds_a()).unwrap(), third);
        assert_eq!(lower_bound(&ds_b()).unwrap(), third);
        let line = DataSet::from_ints(&[&[1], &[2], &[3], &[4], &[5]]).unwrap();
        assert_eq!(lower_bound(&line).unwrap(), ratio(3, 8));
        for ds in [ds_a(), ds_b()] {
            let ub = upper_bound(&ds, &DirectionSearchConfig::default()).unwrap();
            assert_eq!(ub.ratio, third);
            assert!(ub.exact);
        }
        let flat = DataSet::from_ints(&[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        assert!(matches!(
            upper_bound(&flat, &DirectionSearchConfig::default()),
            Err(Error::DegenerateAffineDimension { .. })
        ));
    }

    #[test]
    fn exhaustive_directions_agree_with_random_ones() {
        let ds = DataSet::from_ints(&[&[0, 0], &[0, 0], &[4, 1], &[1, 3], &[1, 3], &[3, 3]]).unwrap();
        let exact = upper_bound(&ds, &DirectionSearchConfig { random: 1, ..Default::default() }).unwrap();
        let many = upper_bound(&ds, &DirectionSearchConfig { random: 200, exhaustive_limit: 0, ..Default::default() }).unwrap();
        assert!(exact.exact);
        assert!(exact.lambda <= many.lambda);
    }

    #[test]
    fn attack_on_ds_a() {
        let plan = build_attack(&ds_a(), &dir(&[1, 0]), &int(1_000_000)).unwrap();
        assert_eq!(plan.x0_projected, Point::from_ints(&[0]));
        assert_eq!(plan.m, 2);
        assert_eq!(plan.y0, Point::from_ints(&[1_000_000, 0]));
        let check = verify_attack(&ds_a(), &plan).unwrap();
        assert!(check.sup_depth_inside <= DepthValue::new(2, 6));
        assert_eq!(check.depth_at_y0, DepthValue::new(2, 6));
        assert!(check.escaped, "{check:?}");
        let weak = verify_attack(&ds_a(), &plan.with_m(1)).unwrap();
        assert!(!weak.escaped);
    }

    #[test]
    fn placement_inside_hull_is_refused() {
        let mut plan = build_attack(&ds_a(), &dir(&[1, 0]), &int(10)).unwrap();
        plan.y0 = Point::from_ints(&[1, 0]);
        assert!(matches!(verify_attack(&ds_a(), &plan), Err(Error::Precondition(_))));
    }

    #[test]
    fn exhaustive_breakdown() {
        for ds in [ds_a(), ds_b()] {
            let r = exact_breakdown(&ds, 4, &default_scales()).unwrap();
            assert_eq!(r.exact_m, Some(2));
            assert!(r.certified(), "{r:?}");
        }
        let line = DataSet::from_ints(&[&[1], &[2], &[3]]).unwrap();
        let r = exact_breakdown(&line, 5, &default_scales()).unwrap();
        assert_eq!(r.exact_m, Some(3));
        assert!(r.lower <= r.ratio().unwrap());
    }

    #[test]
    fn univariate_escape_needs_n_copies() {
        let line = DataSet::from_ints(&[&[1], &[2], &[3], &[4]]).unwrap();
        let far = Point::from_ints(&[1_000]);
        let stays = median_region(&line.with_repeated(&far, 3).unwrap()).unwrap().median;
        assert_eq!(stays, Point::from_ints(&[4]));
        let moves = median_region(&line.with_repeated(&far, 4).unwrap()).unwrap().median;
        assert_eq!(moves, Point::from_ints(&[502]));
    }

    #[test]
    fn report_csv() {
        let r = exact_breakdown(&ds_a(), 3, &default_scales()).unwrap();
        let mut buf = Vec::new();
        write_reports_csv(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,d,lower,upper,exact_m,attack_u,m,scale,escaped\n4,2,1/3,1/3,2,"));
    }
}
