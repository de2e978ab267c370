//! Exact Tukey halfspace depth with witness directions.
//!
//! Depth counts sample points on the closed side `u·X <= u·x`. The infimum
//! over directions is a minimum over the finitely many open cells of the
//! arrangement `{u : u·(X_i - x) = 0}`; inside a cell no sample point sits on
//! the boundary, so the open count is exact there, and no critical direction
//! can do better than an adjacent cell.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::geometry::{int, DataSet, Direction, Point, Scalar};
use crate::grid::{self, cmp_angle_keyed, Int};

/// Exact depth value `k / n`.
#[derive(Clone, Copy, Debug)]
pub struct DepthValue {
    pub count: u64,
    pub n: u64,
}

impl DepthValue {
    pub fn new(count: u64, n: u64) -> Self {
        assert!(n > 0, "depth denominator must be positive");
        DepthValue { count, n }
    }

    pub fn value(&self) -> Scalar {
        Scalar::new(BigInt::from(self.count), BigInt::from(self.n))
    }

    pub fn to_f64(&self) -> f64 {
        self.count as f64 / self.n as f64
    }

    /// Smallest count `k` with `k / n_points >= self`, i.e. `⌈n τ⌉`.
    pub fn required_count(&self, n_points: usize) -> usize {
        let num = self.count as u128 * n_points as u128;
        num.div_ceil(self.n as u128) as usize
    }

    /// Checks `0 < τ <= 1`.
    pub fn check_level(&self) -> Result<()> {
        if self.count == 0 || self.count > self.n {
            return Err(Error::InvalidTau(self.to_string()));
        }
        Ok(())
    }

    /// `τ / (1 + τ)` as an exact rational.
    pub fn breakdown_ratio(&self) -> Scalar {
        let v = self.value();
        &v / (Scalar::one() + &v)
    }
}

impl PartialEq for DepthValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DepthValue {}

impl PartialOrd for DepthValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DepthValue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.count as u128 * other.n as u128).cmp(&(other.count as u128 * self.n as u128))
    }
}

impl fmt::Display for DepthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.count, self.n)
    }
}

impl std::str::FromStr for DepthValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidTau(s.to_string());
        let (k, n) = s.split_once('/').ok_or_else(bad)?;
        let k: u64 = k.trim().parse().map_err(|_| bad())?;
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        Ok(DepthValue::new(k, n))
    }
}

/// A direction attaining the depth, with its closed lower-side counts.
#[derive(Clone, Debug)]
pub struct DepthWitness {
    pub direction: Direction,
    /// Points with `u·X_i <= u·x`.
    pub count_le: usize,
    /// Points with `u·X_i = u·x`.
    pub count_boundary: usize,
}

impl DepthWitness {
    #[cfg(test)]
    fn recount(direction: Direction, x: &Point, ds: &DataSet) -> Self {
        Self::recount_scaled(direction, &scaled_offsets(x, ds))
    }

    fn recount_scaled(direction: Direction, offsets: &[Vec<BigInt>]) -> Self {
        let u = &grid::scale_to_integers(&[direction.coords().to_vec()])[0];
        let mut count_le = 0;
        let mut count_boundary = 0;
        for v in offsets {
            let s: BigInt = u.iter().zip(v).map(|(a, b)| a * b).sum();
            if s.is_zero() {
                count_le += 1;
                count_boundary += 1;
            } else if s.is_negative() {
                count_le += 1;
            }
        }
        DepthWitness {
            direction,
            count_le,
            count_boundary,
        }
    }
}

/// `q_τ(u)`: the `⌈nτ⌉`-th smallest projection `u·X_i`.
pub fn directional_quantile(ds: &DataSet, u: &Direction, tau: DepthValue) -> Result<Scalar> {
    tau.check_level()?;
    let proj = ds.projections(u)?;
    let k = tau.required_count(ds.len());
    Ok(proj[k - 1].clone())
}

/// Exact halfspace depth of `x` with respect to `ds`, for `d <= 3`.
pub fn tukey_depth(x: &Point, ds: &DataSet) -> Result<(DepthValue, DepthWitness)> {
    ds.check_point(x)?;
    let offsets = scaled_offsets(x, ds);
    let cells = cells_of(&offsets, ds.dim())?;
    let n = ds.len() as u64;
    let dir = cells.directions.into_iter().next().expect("at least one cell");
    let witness = DepthWitness::recount_scaled(dir, &offsets);
    debug_assert_eq!(witness.count_le, cells.count);
    Ok((DepthValue::new(cells.count as u64, n), witness))
}

/// One representative direction per maximal cone of minimizing directions.
pub fn optimal_direction_cone(x: &Point, ds: &DataSet) -> Result<Vec<Direction>> {
    ds.check_point(x)?;
    Ok(minimizing_cells(x, ds)?.directions)
}

pub(crate) struct MinCells {
    pub count: usize,
    pub directions: Vec<Direction>,
}

pub(crate) fn minimizing_cells(x: &Point, ds: &DataSet) -> Result<MinCells> {
    cells_of(&scaled_offsets(x, ds), ds.dim())
}

/// `L (X_i - x)` for the least common denominator `L` of all coordinates.
/// Signs of `u·(X_i - x)` are unchanged by the positive factor.
fn scaled_offsets(x: &Point, ds: &DataSet) -> Vec<Vec<BigInt>> {
    let mut l = <BigInt as One>::one();
    for c in ds.points().iter().chain(std::iter::once(x)).flat_map(|p| p.coords()) {
        if !c.denom().is_one() && !(&l % c.denom()).is_zero() {
            l = l.lcm(c.denom());
        }
    }
    let scale = |c: &Scalar| c.numer() * (&l / c.denom());
    let xs: Vec<BigInt> = x.coords().iter().map(scale).collect();
    ds.points()
        .iter()
        .map(|p| p.coords().iter().zip(&xs).map(|(c, xc)| scale(c) - xc).collect())
        .collect()
}

fn cells_of(offsets: &[Vec<BigInt>], d: usize) -> Result<MinCells> {
    let as_scalars = || -> Vec<Vec<Scalar>> {
        offsets
            .iter()
            .map(|r| r.iter().map(|c| Scalar::from_integer(c.clone())).collect())
            .collect()
    };
    match d {
        1 => Ok(cells_1d(&as_scalars())),
        2 => Ok(cells_2d(offsets)),
        3 => Ok(cells_3d(offsets)),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn cells_1d(vs: &[Vec<Scalar>]) -> MinCells {
    let le = vs.iter().filter(|v| !v[0].is_positive()).count();
    let ge = vs.iter().filter(|v| !v[0].is_negative()).count();
    let count = le.min(ge);
    let mut directions = Vec::new();
    if le == count {
        directions.push(Direction::new(vec![int(1)]).expect("nonzero"));
    }
    if ge == count {
        directions.push(Direction::new(vec![int(-1)]).expect("nonzero"));
    }
    MinCells {
        count,
        directions,
    }
}

struct Cell<T> {
    lo: [T; 2],
    hi: [T; 2],
    rep: [T; 2],
}

/// Minimum over open cells of `zeros + #{v : u·v < 0}` for planar vectors.
fn sweep_cells<T: Int>(vs: &[[T; 2]]) -> (usize, Vec<Cell<T>>) {
    let z = T::zero();
    let zeros = vs.iter().filter(|v| v[0] == z && v[1] == z).count();
    let mut nz: Vec<[T; 2]> = vs.iter().filter(|v| !(v[0] == z && v[1] == z)).cloned().collect();
    if nz.is_empty() {
        let one = [T::one(), T::zero()];
        return (
            zeros,
            vec![Cell {
                lo: one.clone(),
                hi: one.clone(),
                rep: one,
            }],
        );
    }
    let keyed = |v: [T; 2]| {
        let k = grid::angle_key(&v);
        (v, k)
    };
    let by_angle = |a: &([T; 2], f64), b: &([T; 2], f64)| cmp_angle_keyed(&a.0, a.1, &b.0, b.1);
    let mut nz: Vec<([T; 2], f64)> = nz.drain(..).map(keyed).collect();
    nz.sort_by(by_angle);
    let m = nz.len();
    let mut crit: Vec<([T; 2], f64)> = Vec::with_capacity(2 * m);
    for (v, _) in &nz {
        let p = [v[1].neg(), v[0].clone()];
        crit.push(keyed([p[0].neg(), p[1].neg()]));
        crit.push(keyed(p));
    }
    crit.sort_by(by_angle);
    crit.dedup_by(|a, b| by_angle(a, b) == Ordering::Equal);
    let upper_bound = |a: &[T; 2]| {
        let ka = grid::angle_key(a);
        nz.partition_point(|(v, kv)| cmp_angle_keyed(v, *kv, a, ka) != Ordering::Greater)
    };
    let mut best = usize::MAX;
    let mut cells = Vec::new();
    for i in 0..crit.len() {
        let lo = &crit[i].0;
        let hi = &crit[(i + 1) % crit.len()].0;
        let rep = if cross(lo, hi) > z {
            [lo[0].add(&hi[0]), lo[1].add(&hi[1])]
        } else {
            [lo[1].neg(), lo[0].clone()]
        };
        // {v : rep·v < 0} = {v : cross(a, v) > 0} with a = perp(rep).
        let a = [rep[1].neg(), rep[0].clone()];
        let na = [a[0].neg(), a[1].neg()];
        let (ua, una) = (upper_bound(&a), upper_bound(&na));
        let open = if grid::half(&a) == 0 { una - ua } else { m - ua + una };
        let count = zeros + open;
        match count.cmp(&best) {
            Ordering::Less => {
                best = count;
                cells.clear();
                cells.push(Cell {
                    lo: lo.clone(),
                    hi: hi.clone(),
                    rep,
                });
            }
            Ordering::Equal => cells.push(Cell {
                lo: lo.clone(),
                hi: hi.clone(),
                rep,
            }),
            Ordering::Greater => {}
        }
    }
    (best, cells)
}

fn cross<T: Int>(a: &[T; 2], b: &[T; 2]) -> T {
    grid::cross(a, b)
}

/// `v` divided by the gcd of its entries.
fn to_scalar_vec(v: &[BigInt]) -> Vec<Scalar> {
    let g = v.iter().fold(<BigInt as Zero>::zero(), |g, c| g.gcd(c));
    let g = if g.is_zero() { <BigInt as One>::one() } else { g };
    v.iter().map(|c| Scalar::from_integer(c / &g)).collect()
}

fn planar_cells_int(ints: Vec<Vec<BigInt>>) -> (usize, Vec<(Vec<Scalar>, Vec<Scalar>, Vec<Scalar>)>) {
    fn run<T: Int + Into<BigInt>>(rows: Vec<Vec<T>>) -> (usize, Vec<(Vec<Scalar>, Vec<Scalar>, Vec<Scalar>)>) {
        let pts: Vec<[T; 2]> = rows.iter().map(|r| grid::pair(r)).collect();
        let (count, cells) = sweep_cells(&pts);
        let conv = |a: [T; 2]| to_scalar_vec(&[a[0].clone().into(), a[1].clone().into()]);
        (
            count,
            cells
                .into_iter()
                .map(|c| (conv(c.lo), conv(c.hi), conv(c.rep)))
                .collect(),
        )
    }
    match grid::narrow(&ints) {
        Some(small) => run(small),
        None => run(ints),
    }
}

fn cells_2d(offsets: &[Vec<BigInt>]) -> MinCells {
    let (count, cells) = planar_cells_int(offsets.to_vec());
    let directions = cells
        .into_iter()
        .map(|(_, _, rep)| Direction::new(rep).expect("cell representative is nonzero"))
        .collect();
    MinCells { count, directions }
}

fn cells_3d(vs: &[Vec<BigInt>]) -> MinCells {
    type V = [BigInt; 3];
    fn cross(a: &V, b: &V) -> V {
        [
            &a[1] * &b[2] - &a[2] * &b[1],
            &a[2] * &b[0] - &a[0] * &b[2],
            &a[0] * &b[1] - &a[1] * &b[0],
        ]
    }
    fn dot3(a: &V, b: &V) -> BigInt {
        &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
    }
    fn primitive(v: V) -> Option<V> {
        let g = v[0].gcd(&v[1]).gcd(&v[2]);
        if g.is_zero() {
            return None;
        }
        Some([&v[0] / &g, &v[1] / &g, &v[2] / &g])
    }
    let nonzero: Vec<V> = vs
        .iter()
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .map(|v| [v[0].clone(), v[1].clone(), v[2].clone()])
        .collect();
    let zeros = vs.len() - nonzero.len();
    let n = vs.len();
    if nonzero.is_empty() {
        return MinCells {
            count: n,
            directions: vec![Direction::from_ints(&[1, 0, 0]).expect("nonzero")],
            };
    }
    let unit = |k: usize| -> V {
        let mut e = [<BigInt as Zero>::zero(), <BigInt as Zero>::zero(), <BigInt as Zero>::zero()];
        e[k] = <BigInt as One>::one();
        e
    };
    let mut candidates: BTreeSet<V> = BTreeSet::new();
    for i in 0..nonzero.len() {
        for j in (i + 1)..nonzero.len() {
            if let Some(w) = primitive(cross(&nonzero[i], &nonzero[j])) {
                candidates.insert([-&w[0], -&w[1], -&w[2]]);
                candidates.insert(w);
            }
        }
    }
    if candidates.is_empty() {
        // All vectors are parallel: any w orthogonal to them is a vertex.
        for k in 0..3 {
            if let Some(w) = primitive(cross(&nonzero[0], &unit(k))) {
                candidates.insert([-&w[0], -&w[1], -&w[2]]);
                candidates.insert(w);
            }
        }
    }
    let mut best = usize::MAX;
    let mut found: Vec<(Vec<bool>, V)> = Vec::new();
    for w in &candidates {
        let dots: Vec<BigInt> = nonzero.iter().map(|v| dot3(w, v)).collect();
        let base = zeros + dots.iter().filter(|d| d.is_negative()).count();
        if base > best {
            continue;
        }
        let in_plane: Vec<&V> = nonzero
            .iter()
            .zip(&dots)
            .filter(|(_, d)| d.is_zero())
            .map(|(v, _)| v)
            .collect();
        let reps: Vec<(usize, V)> = if in_plane.is_empty() {
            vec![(base, w.clone())]
        } else {
            let a = (0..3)
                .map(|k| cross(w, &unit(k)))
                .find(|c| c.iter().any(|x| !x.is_zero()))
                .expect("w is nonzero");
            let b = cross(w, &a);
            let flat: Vec<Vec<BigInt>> = in_plane.iter().map(|v| vec![dot3(&a, v), dot3(&b, v)]).collect();
            let (sub_count, cells) = planar_cells_int(flat);
            cells
                .into_iter()
                .map(|(_, _, t2)| {
                    let (t0, t1) = (t2[0].to_integer(), t2[1].to_integer());
                    let t: V = [
                        &t0 * &a[0] + &t1 * &b[0],
                        &t0 * &a[1] + &t1 * &b[1],
                        &t0 * &a[2] + &t1 * &b[2],
                    ];
                    // Scale w up until the tilt flips no off-plane sign.
                    let mut m = <BigInt as One>::one();
                    for (v, dv) in nonzero.iter().zip(&dots) {
                        if !dv.is_zero() {
                            let need = dot3(&t, v).abs() / dv.abs() + 1;
                            if need > m {
                                m = need;
                            }
                        }
                    }
                    let u: V = [&m * &w[0] + &t[0], &m * &w[1] + &t[1], &m * &w[2] + &t[2]];
                    (base + sub_count, u)
                })
                .collect()
        };
        for (count, u) in reps {
            if count > best {
                continue;
            }
            if count < best {
                best = count;
                found.clear();
            }
            let pattern: Vec<bool> = nonzero.iter().map(|v| dot3(&u, v).is_negative()).collect();
            if !found.iter().any(|(p, _)| *p == pattern) {
                found.push((pattern, u));
            }
        }
    }
    MinCells {
        count: best,
        directions: found
            .into_iter()
            .map(|(_, u)| Direction::new(to_scalar_vec(&u)).expect("tilted vertex is nonzero"))
            .collect(),
    }
}

/// Approximate depth over a finite direction net, for any dimension.
///
/// Minimizing over a subset of directions can only overestimate the depth.
pub fn approximate_depth(x: &Point, ds: &DataSet, net: &[Vec<f64>]) -> Result<DepthValue> {
    ds.check_point(x)?;
    let xf = x.to_f64();
    let pts: Vec<Vec<f64>> = ds.points().iter().map(Point::to_f64).collect();
    let mut best = ds.len();
    for u in net {
        let ux: f64 = u.iter().zip(&xf).map(|(a, b)| a * b).sum();
        let c = pts
            .iter()
            .filter(|p| u.iter().zip(p.iter()).map(|(a, b)| a * b).sum::<f64>() <= ux)
            .count();
        best = best.min(c);
    }
    Ok(DepthValue::new(best as u64, ds.len() as u64))
}

/// Direction net: evenly spaced angles in 2-D; signed axes plus Gaussian
/// directions otherwise.
pub fn direction_net(d: usize, size: usize, seed: u64) -> Vec<Vec<f64>> {
    if d == 1 {
        return vec![vec![1.0], vec![-1.0]];
    }
    if d == 2 {
        return (0..size)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / size as f64;
                vec![t.cos(), t.sin()]
            })
            .collect();
    }
    let mut net = Vec::with_capacity(size + 2 * d);
    for k in 0..d {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; d];
            e[k] = s;
            net.push(e);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..size {
        let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        net.push(v.into_iter().map(|c| c / norm).collect());
    }
    net
}

/// Monte Carlo estimate of the population depth `D(x, F)`.
#[derive(Clone, Debug)]
pub struct PopulationDepth {
    pub estimate: f64,
    pub half_width: f64,
    pub argmin: Vec<f64>,
}

pub fn population_depth_estimate(
    spec: &DistributionSpec,
    x: &[f64],
    n_samples: usize,
    seed: u64,
    net_size: usize,
) -> Result<PopulationDepth> {
    if n_samples == 0 {
        return Err(Error::Precondition("population depth needs at least one draw".into()));
    }
    let sample = spec.draw_f64(n_samples, seed)?;
    Ok(population_depth_from_sample(&sample, x, &direction_net(x.len(), net_size, seed ^ 0x9e37)))
}

pub(crate) fn population_depth_from_sample(sample: &[Vec<f64>], x: &[f64], net: &[Vec<f64>]) -> PopulationDepth {
    let n = sample.len() as f64;
    let mut best = f64::INFINITY;
    let mut argmin = net[0].clone();
    for u in net {
        let ux: f64 = u.iter().zip(x).map(|(a, b)| a * b).sum();
        let c = sample
            .iter()
            .filter(|p| u.iter().zip(p.iter()).map(|(a, b)| a * b).sum::<f64>() <= ux)
            .count() as f64
            / n;
        if c < best {
            best = c;
            argmin = u.clone();
        }
    }
    PopulationDepth {
        estimate: best,
        half_width: 1.96 * (best * (1.0 - best) / n).sqrt(),
        argmin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::dot;
    use crate::geometry::ratio;

    fn ds_a() -> DataSet {
        DataSet::from_ints(&[&[0, 0], &[2, 0], &[1, 1], &[1, 1]]).unwrap()
    }

    fn line(values: &[i64]) -> DataSet {
        DataSet::new(values.iter().map(|&v| Point::from_ints(&[v])).collect()).unwrap()
    }

    #[test]
    fn quantiles() {
        let ds = line(&[1, 2, 3, 4, 5]);
        let u = Direction::from_ints(&[1]).unwrap();
        assert_eq!(directional_quantile(&ds, &u, DepthValue::new(3, 5)).unwrap(), int(3));
        let up = Direction::from_ints(&[0, 1]).unwrap();
        assert_eq!(directional_quantile(&ds_a(), &up, DepthValue::new(1, 2)).unwrap(), int(0));
        assert_eq!(directional_quantile(&ds_a(), &up, DepthValue::new(3, 4)).unwrap(), int(1));
        assert!(directional_quantile(&ds_a(), &up, DepthValue::new(0, 4)).is_err());
        assert!(directional_quantile(&ds_a(), &up, DepthValue::new(5, 4)).is_err());
    }

    #[test]
    fn depth_examples() {
        let (d, _) = tukey_depth(&Point::from_ints(&[3]), &line(&[1, 2, 3, 4, 5])).unwrap();
        assert_eq!(d, DepthValue::new(3, 5));

        let ds = ds_a();
        let (d, w) = tukey_depth(&Point::from_ints(&[1, 1]), &ds).unwrap();
        assert_eq!(d, DepthValue::new(2, 4));
        assert_eq!(w.count_le, 2);

        let (d, w) = tukey_depth(&Point::from_ints(&[0, 0]), &ds).unwrap();
        assert_eq!(d, DepthValue::new(1, 4));
        assert_eq!(w.count_le, 1);

        let (d, _) = tukey_depth(&Point::from_ints(&[5, 5]), &ds).unwrap();
        assert_eq!(d.count, 0);
    }

    #[test]
    fn cone_examples() {
        let cone = optimal_direction_cone(&Point::from_ints(&[2]), &line(&[1, 2, 3])).unwrap();
        assert_eq!(cone.len(), 2);
        let ds = ds_a();
        let x = Point::from_ints(&[1, 1]);
        let cone = optimal_direction_cone(&x, &ds).unwrap();
        let down = cone.iter().any(|u| {
            dot(u.coords(), ds.point(0).coords()) > dot(u.coords(), x.coords())
                && dot(u.coords(), ds.point(1).coords()) > dot(u.coords(), x.coords())
        });
        assert!(down);
        for u in optimal_direction_cone(&Point::from_ints(&[0, 0]), &ds).unwrap() {
            assert_eq!(DepthWitness::recount(u, &Point::from_ints(&[0, 0]), &ds).count_le, 1);
        }
    }

    #[test]
    fn depth_in_three_dimensions() {
        let ds = DataSet::from_ints(&[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 1]]).unwrap();
        let (d, w) = tukey_depth(&Point::from_ints(&[1, 1, 1]), &ds).unwrap();
        assert_eq!(d.count, 2);
        assert_eq!(w.count_le, 2);
        let (d, _) = tukey_depth(&Point::from_ints(&[0, 0, 0]), &ds).unwrap();
        assert_eq!(d.count, 1);
        let (d, _) = tukey_depth(&Point::new(vec![ratio(1, 2), ratio(1, 2), ratio(-1, 2)]), &ds).unwrap();
        assert_eq!(d.count, 0);
    }

    #[test]
    fn depth_of_collinear_and_duplicated_sample() {
        let ds = DataSet::from_ints(&[&[0, 0], &[1, 1], &[1, 1], &[2, 2], &[3, 3]]).unwrap();
        let (d, _) = tukey_depth(&Point::from_ints(&[1, 1]), &ds).unwrap();
        assert_eq!(d.count, 3);
        let (d, _) = tukey_depth(&Point::from_ints(&[1, 0]), &ds).unwrap();
        assert_eq!(d.count, 0);
    }

    #[test]
    fn depth_value_ordering_and_parsing() {
        assert_eq!(DepthValue::new(1, 2), DepthValue::new(2, 4));
        assert!(DepthValue::new(1, 3) < DepthValue::new(1, 2));
        assert_eq!("3/4".parse::<DepthValue>().unwrap(), DepthValue::new(3, 4));
        assert_eq!(DepthValue::new(1, 2).required_count(4), 2);
        assert_eq!(DepthValue::new(1, 3).required_count(4), 2);
        assert_eq!(DepthValue::new(1, 2).breakdown_ratio(), ratio(1, 3));
    }
}
