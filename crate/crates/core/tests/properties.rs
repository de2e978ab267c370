use halfspace_median::breakdown::{lower_bound, upper_bound, DirectionSearchConfig};
use halfspace_median::depth::{tukey_depth, DepthValue};
use halfspace_median::error::Error;
use halfspace_median::geometry::{affine_dimension, int, DataSet, Point, Scalar};
use halfspace_median::regions::{depth_region, median_region};
use proptest::prelude::*;

fn small_set(d: usize, max_n: usize) -> impl Strategy<Value = DataSet> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, d), (d + 1)..=max_n).prop_map(|rows| {
        let pts = rows.iter().map(|r| Point::from_ints(r)).collect();
        DataSet::new(pts).unwrap()
    })
    .prop_filter("full-dimensional", move |ds| affine_dimension(ds) == d)
}

fn affine(ds: &DataSet, a: [[i64; 2]; 2], b: [i64; 2]) -> DataSet {
    let map = |p: &Point| {
        let c = p.coords();
        Point::new(
            (0..2)
                .map(|i| &c[0] * int(a[i][0]) + &c[1] * int(a[i][1]) + int(b[i]))
                .collect::<Vec<Scalar>>(),
        )
    };
    DataSet::new(ds.points().iter().map(map).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn depth_is_affine_invariant(ds in small_set(2, 9), x in prop::collection::vec(-5i64..=5, 2),
                                 a in prop::array::uniform2(prop::array::uniform2(-3i64..=3)), b in prop::array::uniform2(-5i64..=5)) {
        prop_assume!(a[0][0] * a[1][1] - a[0][1] * a[1][0] != 0);
        let x = Point::from_ints(&x);
        let moved = affine(&ds, a, b);
        let mx = affine(&DataSet::new(vec![x.clone()]).unwrap(), a, b).point(0).clone();
        prop_assert_eq!(tukey_depth(&x, &ds).unwrap().0, tukey_depth(&mx, &moved).unwrap().0);
    }

    #[test]
    fn regions_are_nested(ds in small_set(2, 9)) {
        let n = ds.len() as u64;
        let top = median_region(&ds).unwrap().lambda_star.count;
        let mut outer = depth_region(&ds, DepthValue::new(1, n)).unwrap();
        for k in 2..=top {
            let inner = depth_region(&ds, DepthValue::new(k, n)).unwrap();
            for v in &inner.vertices {
                prop_assert!(outer.contains(v));
            }
            outer = inner;
        }
    }

    #[test]
    fn region_vertices_reach_their_level(ds in small_set(2, 10)) {
        let n = ds.len() as u64;
        let top = median_region(&ds).unwrap().lambda_star.count;
        for k in 1..=top {
            for v in &depth_region(&ds, DepthValue::new(k, n)).unwrap().vertices {
                prop_assert!(tukey_depth(v, &ds).unwrap().0.count >= k);
            }
        }
    }

    #[test]
    fn median_attains_max_depth(ds in small_set(2, 10)) {
        let m = median_region(&ds).unwrap();
        prop_assert_eq!(tukey_depth(&m.median, &ds).unwrap().0, m.lambda_star);
        for p in ds.points() {
            prop_assert!(tukey_depth(p, &ds).unwrap().0 <= m.lambda_star);
        }
    }

    #[test]
    fn lower_bound_below_upper_bound(ds in small_set(2, 10)) {
        let ub = upper_bound(&ds, &DirectionSearchConfig::default()).unwrap();
        prop_assert!(lower_bound(&ds).unwrap() <= ub.ratio);
    }

    #[test]
    fn space_median_is_deepest(ds in small_set(3, 7)) {
        let m = median_region(&ds).unwrap();
        prop_assert_eq!(tukey_depth(&m.median, &ds).unwrap().0, m.lambda_star);
    }
}

#[test]
fn flat_sample_is_refused() {
    let ds = DataSet::from_ints(&[&[0, 0], &[1, 1], &[3, 3]]).unwrap();
    assert!(matches!(
        median_region(&ds),
        Err(Error::DegenerateAffineDimension { expected: 2, found: 1 })
    ));
}
