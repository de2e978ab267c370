//! Exact rational geometry: points, directions, halfspaces, datasets.
//!
//! Every predicate here is decided with arbitrary-precision rationals, so
//! boundary ties in degenerate data are classified without tolerance.

mod hull;
pub mod linalg;
mod polytope;

pub use hull::convex_hull_contains;
pub use polytope::{intersect_halfspaces, Polytope};
pub(crate) use polytope::intersect_in_box;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(v: &Scalar) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Rounds `v` to the nearest multiple of `2^-bits`.
pub fn snap(v: f64, bits: u32) -> Scalar {
    assert!(v.is_finite(), "cannot snap a non-finite value");
    let den = BigInt::one() << bits;
    let scaled = v * 2f64.powi(bits as i32);
    let num = BigInt::from(scaled.round() as i128);
    Scalar::new(num, den)
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub(crate) fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn cross3(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// A point of R^d with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn from_f64(coords: &[f64], bits: u32) -> Self {
        Point(coords.iter().map(|&c| snap(c, bits)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    pub fn origin(d: usize) -> Self {
        Point(vec![Scalar::zero(); d])
    }

    /// `self + t * v`
    pub fn offset(&self, v: &[Scalar], t: &Scalar) -> Point {
        Point(self.0.iter().zip(v).map(|(a, b)| a + b * t).collect())
    }

    pub fn centroid<'a, I: IntoIterator<Item = &'a Point>>(points: I) -> Option<Point> {
        let mut iter = points.into_iter();
        let first = iter.next()?;
        let mut acc = first.0.clone();
        let mut count = 1i64;
        for p in iter {
            for (a, b) in acc.iter_mut().zip(&p.0) {
                *a += b;
            }
            count += 1;
        }
        let n = int(count);
        Some(Point(acc.into_iter().map(|a| a / &n).collect()))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Nonzero direction, compared up to positive scaling.
#[derive(Clone)]
pub struct Direction(Vec<Scalar>);

impl Direction {
    pub fn new(v: Vec<Scalar>) -> Result<Self> {
        if v.iter().all(Zero::is_zero) {
            return Err(Error::ZeroDirection);
        }
        Ok(Direction(v))
    }

    pub fn from_ints(v: &[i64]) -> Result<Self> {
        Direction::new(v.iter().map(|&c| int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    /// Scales so the first nonzero coordinate has absolute value one.
    pub fn canonical(&self) -> Vec<Scalar> {
        let lead = self
            .0
            .iter()
            .find(|c| !c.is_zero())
            .expect("direction is nonzero")
            .abs();
        self.0.iter().map(|c| c / &lead).collect()
    }

    pub fn neg(&self) -> Direction {
        Direction(self.0.iter().map(|c| -c).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }
}

impl PartialEq for Direction {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.canonical() == other.canonical()
    }
}

impl Eq for Direction {}

impl Hash for Direction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Direction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical().cmp(&other.canonical())
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Direction{:?}", Point(self.0.clone()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Interior,
    Boundary,
    Exterior,
}

/// Closed halfspace `{x : u·x >= q}`; the normal points into the interior.
#[derive(Clone, Debug)]
pub struct Halfspace {
    pub normal: Direction,
    pub offset: Scalar,
}

impl Halfspace {
    pub fn new(normal: Direction, offset: Scalar) -> Self {
        Halfspace { normal, offset }
    }

    /// The halfspace with inward normal `normal` whose boundary passes through `p`.
    pub fn through(normal: Direction, p: &Point) -> Self {
        let offset = dot(normal.coords(), p.coords());
        Halfspace { normal, offset }
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `u·x - q`: positive inside, zero on the boundary.
    pub fn slack(&self, x: &[Scalar]) -> Scalar {
        dot(self.normal.coords(), x) - &self.offset
    }

    pub fn side_of(&self, x: &Point) -> Result<Side> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(match self.slack(x.coords()).cmp(&Scalar::zero()) {
            Ordering::Greater => Side::Interior,
            Ordering::Equal => Side::Boundary,
            Ordering::Less => Side::Exterior,
        })
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn flipped(&self) -> Halfspace {
        Halfspace {
            normal: self.normal.neg(),
            offset: -&self.offset,
        }
    }

    /// Key identifying the halfspace up to positive scaling.
    pub fn key(&self) -> (Vec<Scalar>, Scalar) {
        let lead = self
            .normal
            .coords()
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero")
            .abs();
        (self.normal.canonical(), &self.offset / lead)
    }
}

impl PartialEq for Halfspace {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Halfspace {}

/// Finite multiset of points sharing one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct DataSet {
    points: Vec<Point>,
    dim: usize,
    /// Binary precision the coordinates were snapped to, when sampled.
    pub precision_bits: Option<u32>,
}

impl DataSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptyDataSet)?.dim();
        if dim == 0 {
            return Err(Error::UnsupportedDimension(0));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        Ok(DataSet {
            points,
            dim,
            precision_bits: None,
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        DataSet::new(rows.iter().map(|r| Point::from_ints(r)).collect())
    }

    pub fn with_precision(mut self, bits: Option<u32>) -> Self {
        self.precision_bits = bits;
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn check_point(&self, x: &Point) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// Adds `count` copies of `p`.
    pub fn with_repeated(&self, p: &Point, count: usize) -> Result<DataSet> {
        self.check_point(p)?;
        let mut points = self.points.clone();
        points.extend(std::iter::repeat(p.clone()).take(count));
        Ok(DataSet {
            points,
            dim: self.dim,
            precision_bits: self.precision_bits,
        })
    }

    pub fn concat(&self, other: &DataSet) -> Result<DataSet> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        DataSet::new(points)
    }

    /// Reflection of every point through `center`: `2·center - X`.
    pub fn reflected(&self, center: &Point) -> Result<DataSet> {
        self.check_point(center)?;
        let two = int(2);
        let points = self
            .points
            .iter()
            .map(|p| {
                Point(
                    center
                        .0
                        .iter()
                        .zip(&p.0)
                        .map(|(c, x)| c * &two - x)
                        .collect(),
                )
            })
            .collect();
        DataSet::new(points)
    }

    /// `ds ∪ (2·center - ds)`
    pub fn symmetrized(&self, center: &Point) -> Result<DataSet> {
        self.concat(&self.reflected(center)?)
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut lo = self.points[0].0.clone();
        let mut hi = lo.clone();
        for p in &self.points[1..] {
            for k in 0..self.dim {
                if p.0[k] < lo[k] {
                    lo[k] = p.0[k].clone();
                }
                if p.0[k] > hi[k] {
                    hi[k] = p.0[k].clone();
                }
            }
        }
        (lo, hi)
    }

    /// Sorted projections `u·X_i`.
    pub fn projections(&self, u: &Direction) -> Result<Vec<Scalar>> {
        if u.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.dim(),
            });
        }
        let mut values: Vec<Scalar> = self.points.iter().map(|p| dot(u.coords(), &p.0)).collect();
        values.sort();
        Ok(values)
    }

    /// False when some point repeats or some `d + 1` points lie on a common hyperplane.
    pub fn in_general_position(&self) -> bool {
        let n = self.len();
        let d = self.dim;
        if n <= d {
            return affine_dimension_of(&self.points) + 1 == n;
        }
        let mut idx: Vec<usize> = (0..=d).collect();
        loop {
            let subset: Vec<Point> = idx.iter().map(|&i| self.points[i].clone()).collect();
            if affine_dimension_of(&subset) < d {
                return false;
            }
            let mut k = d as isize;
            while k >= 0 && idx[k as usize] == n - (d + 1) + k as usize {
                k -= 1;
            }
            if k < 0 {
                return true;
            }
            idx[k as usize] += 1;
            for j in (k as usize + 1)..=d {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

pub(crate) fn affine_dimension_of(points: &[Point]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    // Incremental elimination, stopping once the span is full.
    let d = first.dim();
    let mut basis: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for p in &points[1..] {
        let mut v = sub(&p.0, &first.0);
        for (piv, b) in &basis {
            if !v[*piv].is_zero() {
                let f = &v[*piv] / &b[*piv];
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(piv) = v.iter().position(|x| !x.is_zero()) {
            basis.push((piv, v));
            if basis.len() == d {
                break;
            }
        }
    }
    basis.len()
}

/// Dimension of the affine span of the sample.
pub fn affine_dimension(ds: &DataSet) -> usize {
    affine_dimension_of(ds.points())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds_a() -> DataSet {
        DataSet::from_ints(&[&[0, 0], &[2, 0], &[1, 1], &[1, 1]]).unwrap()
    }

    #[test]
    fn affine_dimension_cases() {
        assert_eq!(affine_dimension(&DataSet::from_ints(&[&[3, 4]]).unwrap()), 0);
        let line = DataSet::from_ints(&[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        assert_eq!(affine_dimension(&line), 1);
        assert_eq!(affine_dimension(&ds_a()), 2);
    }

    #[test]
    fn side_of_cases() {
        let h = Halfspace::new(Direction::from_ints(&[1, 0]).unwrap(), int(0));
        assert_eq!(h.side_of(&Point::from_ints(&[0, 5])).unwrap(), Side::Boundary);
        assert_eq!(h.side_of(&Point::from_ints(&[1, 0])).unwrap(), Side::Interior);
        assert_eq!(h.side_of(&Point::from_ints(&[-1, 0])).unwrap(), Side::Exterior);
        assert!(matches!(
            h.side_of(&Point::from_ints(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn directions_compare_up_to_positive_scale() {
        let a = Direction::from_ints(&[2, -4]).unwrap();
        let b = Direction::from_ints(&[1, -2]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, a.neg());
        assert!(Direction::from_ints(&[0, 0]).is_err());
    }

    #[test]
    fn general_position_detects_duplicates_and_collinear() {
        assert!(!ds_a().in_general_position());
        let tri = DataSet::from_ints(&[&[0, 0], &[4, 0], &[0, 3], &[1, 1]]).unwrap();
        assert!(tri.in_general_position());
        let col = DataSet::from_ints(&[&[0, 0], &[1, 1], &[2, 2], &[0, 5]]).unwrap();
        assert!(!col.in_general_position());
    }

    #[test]
    fn snapping_is_exact_on_dyadics() {
        assert_eq!(snap(0.375, 53), ratio(3, 8));
        assert_eq!(snap(-2.0, 10), int(-2));
    }
}
