//! Exact integer images of rational vectors.
//!
//! Orientation predicates are invariant under a common positive scaling, so
//! the hot sweeps run on integer coordinates, in `i128` whenever the
//! magnitudes leave room for a 2x2 determinant.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::geometry::Scalar;

pub(crate) trait Int: Clone + Ord + Send + Sync + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn to_f64(&self) -> f64;
}

impl Int for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Int for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

pub(crate) fn cross<T: Int>(a: &[T; 2], b: &[T; 2]) -> T {
    a[0].mul(&b[1]).sub(&a[1].mul(&b[0]))
}

pub(crate) fn dot2<T: Int>(a: &[T; 2], b: &[T; 2]) -> T {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1]))
}

/// 0 for angles in [0, π), 1 for [π, 2π).
pub(crate) fn half<T: Int>(v: &[T; 2]) -> u8 {
    let z = T::zero();
    if v[1] > z || (v[1] == z && v[0] > z) {
        0
    } else {
        1
    }
}

/// Total order by polar angle of nonzero vectors.
pub(crate) fn cmp_angle<T: Int>(a: &[T; 2], b: &[T; 2]) -> Ordering {
    half(a)
        .cmp(&half(b))
        .then_with(|| T::zero().cmp(&cross(a, b)))
}

/// Approximate polar angle in `[0, 2π]`, consistent with [`cmp_angle`].
pub(crate) fn angle_key<T: Int>(v: &[T; 2]) -> f64 {
    let a = v[1].to_f64().atan2(v[0].to_f64());
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// Keys further apart than any rounding error decide the order.
const KEY_GAP: f64 = 1e-12;

/// [`cmp_angle`] that consults precomputed keys first.
pub(crate) fn cmp_angle_keyed<T: Int>(a: &[T; 2], ka: f64, b: &[T; 2], kb: f64) -> Ordering {
    if (ka - kb).abs() > KEY_GAP {
        ka.total_cmp(&kb)
    } else {
        cmp_angle(a, b)
    }
}

/// Integer coordinates `v * L` for the least common denominator `L`.
pub(crate) fn scale_to_integers(rows: &[Vec<Scalar>]) -> Vec<Vec<BigInt>> {
    scale_with_factor(rows).0
}

/// [`scale_to_integers`] together with the factor `L`.
pub(crate) fn scale_with_factor(rows: &[Vec<Scalar>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut l = <BigInt as One>::one();
    for r in rows {
        for c in r {
            l = l.lcm(c.denom());
        }
    }
    let ints = rows
        .iter()
        .map(|r| r.iter().map(|c| c.numer() * (&l / c.denom())).collect())
        .collect();
    (ints, l)
}

/// Magnitude below which products of differences of two coordinates fit in i128.
const NARROW_LIMIT_BITS: u64 = 61;

pub(crate) fn narrow(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    narrow_to(rows, NARROW_LIMIT_BITS)
}

/// Magnitude below which a triple product of 3-D differences, dotted with
/// another such cross product, fits in i128.
pub(crate) const SOLID_LIMIT_BITS: u64 = 28;

pub(crate) fn narrow_to(rows: &[Vec<BigInt>], bits: u64) -> Option<Vec<Vec<i128>>> {
    let fits = rows.iter().flatten().all(|c| c.abs().bits() <= bits);
    if !fits {
        return None;
    }
    Some(
        rows.iter()
            .map(|r| r.iter().map(|c| c.to_i128().expect("checked width")).collect())
            .collect(),
    )
}

pub(crate) fn pair<T: Clone>(v: &[T]) -> [T; 2] {
    [v[0].clone(), v[1].clone()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    #[test]
    fn angular_order_is_total() {
        let mut v: Vec<[i128; 2]> = vec![[0, -1], [-1, 0], [1, 1], [1, 0], [0, 1], [-1, -1], [2, 0]];
        v.sort_by(cmp_angle);
        assert_eq!(v[0], [1, 0]);
        assert_eq!(cmp_angle(&v[0], &v[1]), Ordering::Equal);
        assert_eq!(v.last().unwrap(), &[0, -1]);
    }

    #[test]
    fn keyed_order_agrees_with_exact_order() {
        let v: Vec<[i128; 2]> = vec![
            [1, 0],
            [1 << 60, 1],
            [-1, 0],
            [-(1 << 60), -1],
            [0, -1],
            [1 << 60, -1],
            [3, 4],
            [6, 8],
        ];
        for a in &v {
            for b in &v {
                assert_eq!(cmp_angle_keyed(a, angle_key(a), b, angle_key(b)), cmp_angle(a, b), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn scaling_preserves_ratios() {
        let rows = vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(-3, 4), ratio(0, 1)]];
        let s = scale_to_integers(&rows);
        assert_eq!(s[0], vec![BigInt::from(6), BigInt::from(4)]);
        assert_eq!(s[1], vec![BigInt::from(-9), BigInt::from(0)]);
        assert!(narrow(&s).is_some());
    }
}
