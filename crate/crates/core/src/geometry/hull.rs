use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::{DataSet, Point, Scalar};
use crate::error::Result;

/// Whether `x` lies in the closed convex hull of the sample.
///
/// Decided by phase-one simplex on `Σ λ_i X_i = x, Σ λ_i = 1, λ >= 0`
/// in exact arithmetic with Bland's rule, so it terminates and never
/// misreports boundary points.
pub fn convex_hull_contains(ds: &DataSet, x: &Point) -> Result<bool> {
    ds.check_point(x)?;
    let distinct: BTreeSet<&Point> = ds.points().iter().collect();
    let cols: Vec<&Point> = distinct.into_iter().collect();
    Ok(feasible_combination(&cols, x))
}

fn feasible_combination(cols: &[&Point], x: &Point) -> bool {
    let d = x.dim();
    let m = d + 1;
    let n = cols.len();
    // Tableau rows: [A | I_art | b], with b >= 0 enforced by row sign flips.
    let width = n + m + 1;
    let mut t: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    for r in 0..m {
        let mut row = vec![Scalar::zero(); width];
        for (j, p) in cols.iter().enumerate() {
            row[j] = if r < d { p.0[r].clone() } else { Scalar::one() };
        }
        row[n + r] = Scalar::one();
        row[width - 1] = if r < d { x.0[r].clone() } else { Scalar::one() };
        if row[width - 1].is_negative() {
            for (j, v) in row.iter_mut().enumerate() {
                if j < n || j == width - 1 {
                    *v = -v.clone();
                }
            }
        }
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Objective: minimize the sum of artificials, i.e. reduced costs = -Σ rows.
    let mut cost = vec![Scalar::zero(); width];
    for row in &t {
        for j in 0..width {
            if !(n..n + m).contains(&j) {
                cost[j] -= &row[j];
            }
        }
    }
    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Scalar)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let q = &t[r][width - 1] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, lq)) => q < *lq || (q == *lq && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, q));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // Unbounded direction cannot occur in phase one; treat as optimal.
            break;
        };
        let inv = Scalar::one() / &t[pr][enter];
        for v in t[pr].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m {
            if r != pr && !t[r][enter].is_zero() {
                let f = t[r][enter].clone();
                for j in 0..width {
                    let delta = &f * &t[pr][j];
                    t[r][j] -= delta;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for j in 0..width {
                let delta = &f * &t[pr][j];
                cost[j] -= delta;
            }
        }
        basis[pr] = enter;
    }
    // Remaining artificial mass is -cost[rhs].
    cost[width - 1].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    fn ds_a() -> DataSet {
        DataSet::from_ints(&[&[0, 0], &[2, 0], &[1, 1], &[1, 1]]).unwrap()
    }

    #[test]
    fn hull_membership_on_degenerate_sample() {
        let ds = ds_a();
        assert!(convex_hull_contains(&ds, &Point::new(vec![ratio(1, 1), ratio(1, 2)])).unwrap());
        assert!(convex_hull_contains(&ds, &Point::from_ints(&[1, 1])).unwrap());
        assert!(!convex_hull_contains(&ds, &Point::from_ints(&[5, 5])).unwrap());
        assert!(convex_hull_contains(&ds, &Point::from_ints(&[1, 0])).unwrap());
        assert!(!convex_hull_contains(&ds, &Point::new(vec![ratio(1, 1), ratio(-1, 1000)])).unwrap());
    }

    #[test]
    fn hull_of_collinear_points() {
        let ds = DataSet::from_ints(&[&[0, 0], &[1, 1], &[3, 3]]).unwrap();
        assert!(convex_hull_contains(&ds, &Point::from_ints(&[2, 2])).unwrap());
        assert!(!convex_hull_contains(&ds, &Point::from_ints(&[2, 1])).unwrap());
        assert!(!convex_hull_contains(&ds, &Point::from_ints(&[4, 4])).unwrap());
    }
}
