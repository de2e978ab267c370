//! Depth regions as intersections of irrotatable halfspaces.
//!
//! A closed halfspace `H` is irrotatable at level `k = ⌈nτ⌉` when its open
//! complement holds at most `k - 1` sample points while some infinitesimal
//! rotation of `H` about a flat spanned by boundary sample points pushes the
//! count above `k - 1`. The depth region `{x : D(x) >= τ}` is the
//! intersection of all such halfspaces, and it never needs general position.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::depth::{tukey_depth, DepthValue};
use crate::error::{Error, Result};
use crate::geometry::{
    affine_dimension, cross3, dot, int, intersect_in_box, sub, DataSet, Direction, Halfspace, Point, Polytope, Scalar,
};
use crate::grid::{self, cmp_angle_keyed, Int};

/// Evidence that a halfspace is irrotatable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrotatableCertificate {
    pub halfspace: Halfspace,
    /// Indices of all sample points on the boundary.
    pub boundary_points: Vec<usize>,
    /// `d - 1` boundary indices spanning the rotation pivot.
    pub pivot_flat: Vec<usize>,
    /// Points strictly outside the halfspace.
    pub cut_count: usize,
}

struct Analysis {
    cut: usize,
    boundary: Vec<usize>,
    /// Largest number of boundary points a rotation can expel.
    extra: usize,
    pivot: Vec<usize>,
}

fn positions(ds: &DataSet, idx: &[usize]) -> BTreeMap<Point, Vec<usize>> {
    let mut m: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    for &i in idx {
        m.entry(ds.point(i).clone()).or_default().push(i);
    }
    m
}

fn analyze(h: &Halfspace, ds: &DataSet) -> Result<Analysis> {
    let mut cut = 0;
    let mut boundary = Vec::new();
    for (i, p) in ds.points().iter().enumerate() {
        let s = h.slack(p.coords());
        if s.is_negative() {
            cut += 1;
        } else if s.is_zero() {
            boundary.push(i);
        }
    }
    if boundary.is_empty() {
        return Err(Error::EmptyBoundary);
    }
    let groups: Vec<(Point, Vec<usize>)> = positions(ds, &boundary).into_iter().collect();
    let u = h.normal.coords();
    let (extra, pivot) = match ds.dim() {
        2 => {
            // Rotating about an end of the boundary segment expels everything
            // else on the line; the end with fewer copies expels the most.
            let t = [-u[1].clone(), u[0].clone()];
            let mut along: Vec<(Scalar, &Vec<usize>)> = groups.iter().map(|(p, ix)| (dot(&t, p.coords()), ix)).collect();
            along.sort_by(|a, b| a.0.cmp(&b.0));
            let first = along.first().expect("nonempty").1;
            let last = along.last().expect("nonempty").1;
            let end = if last.len() < first.len() { last } else { first };
            (boundary.len() - end.len(), vec![end[0]])
        }
        3 => {
            let mut best = (0, vec![groups[0].1[0]]);
            for a in 0..groups.len() {
                for b in (a + 1)..groups.len() {
                    let pa = groups[a].0.coords();
                    let ab = sub(groups[b].0.coords(), pa);
                    let (mut left, mut right) = (0, 0);
                    for (p, ix) in &groups {
                        let s = dot(u, &cross3(&ab, &sub(p.coords(), pa)));
                        if s.is_positive() {
                            left += ix.len();
                        } else if s.is_negative() {
                            right += ix.len();
                        }
                    }
                    if left.max(right) > best.0 {
                        best = (left.max(right), vec![groups[a].1[0], groups[b].1[0]]);
                    }
                }
            }
            if groups.len() >= 2 && best.1.len() == 1 {
                best.1 = vec![groups[0].1[0], groups[1].1[0]];
            }
            best
        }
        d => return Err(Error::UnsupportedDimension(d)),
    };
    Ok(Analysis { cut, boundary, extra, pivot })
}

/// A certificate together with the levels `k` it is valid for:
/// `cut < k <= cut + extra`.
struct LevelCert {
    halfspace: LazyHalfspace,
    boundary_points: Vec<usize>,
    pivot_flat: Vec<usize>,
    cut_count: usize,
    extra: usize,
}

/// Sweeps emit many more candidates than any one level uses, so the exact
/// offset is only computed on demand.
enum LazyHalfspace {
    Ready(Halfspace),
    Through {
        normal: Direction,
        point: usize,
        built: OnceLock<Halfspace>,
    },
}

impl LevelCert {
    fn valid_at(&self, k: usize) -> bool {
        self.cut_count < k && k <= self.cut_count + self.extra
    }

    fn halfspace(&self, ds: &DataSet) -> Halfspace {
        match &self.halfspace {
            LazyHalfspace::Ready(h) => h.clone(),
            LazyHalfspace::Through { normal, point, built } => built
                .get_or_init(|| Halfspace::through(normal.clone(), ds.point(*point)))
                .clone(),
        }
    }

    fn into_cert(self, ds: &DataSet) -> IrrotatableCertificate {
        IrrotatableCertificate {
            halfspace: self.halfspace(ds),
            boundary_points: self.boundary_points,
            pivot_flat: self.pivot_flat,
            cut_count: self.cut_count,
        }
    }
}

/// Whether some level in `[k_lo, k_hi]` makes `(cut, extra)` irrotatable.
fn in_range(cut: usize, extra: usize, k_lo: usize, k_hi: usize) -> bool {
    cut < k_hi && cut + extra >= k_lo && extra > 0
}

fn level_cert(h: &Halfspace, a: Analysis, k_lo: usize, k_hi: usize) -> Option<LevelCert> {
    in_range(a.cut, a.extra, k_lo, k_hi).then(|| LevelCert {
        halfspace: LazyHalfspace::Ready(h.clone()),
        boundary_points: a.boundary,
        pivot_flat: a.pivot,
        cut_count: a.cut,
        extra: a.extra,
    })
}

fn check_dim(ds: &DataSet) -> Result<()> {
    match ds.dim() {
        2 | 3 => Ok(()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Tests conditions (cut at most `⌈nτ⌉ - 1`, some rotation cuts more).
pub fn is_irrotatable(
    h: &Halfspace,
    ds: &DataSet,
    tau: DepthValue,
) -> Result<(bool, Option<IrrotatableCertificate>)> {
    check_dim(ds)?;
    tau.check_level()?;
    if h.dim() != ds.dim() {
        return Err(Error::DimensionMismatch { expected: ds.dim(), found: h.dim() });
    }
    let k = tau.required_count(ds.len());
    let cert = level_cert(h, analyze(h, ds)?, k, k).map(|c| c.into_cert(ds));
    Ok((cert.is_some(), cert))
}

/// Largest cut count reachable by an infinitesimal rotation about the flat
/// through the given boundary points, in either sense.
pub fn rotation_cut(h: &Halfspace, ds: &DataSet, pivot: &[usize]) -> Result<usize> {
    check_dim(ds)?;
    let d = ds.dim();
    let a = analyze(h, ds)?;
    if pivot.len() != d - 1 || pivot.iter().any(|i| !a.boundary.contains(i)) {
        return Err(Error::Precondition(format!("pivot must be {} boundary points", d - 1)));
    }
    let u = h.normal.coords();
    let p0 = ds.point(pivot[0]).coords();
    let side = |p: &[Scalar]| -> Scalar {
        let w = sub(p, p0);
        if d == 2 {
            -&u[1] * &w[0] + &u[0] * &w[1]
        } else {
            dot(u, &cross3(&sub(ds.point(pivot[1]).coords(), p0), &w))
        }
    };
    if d == 3 && ds.point(pivot[0]) == ds.point(pivot[1]) {
        return Err(Error::Precondition("pivot points must be distinct".into()));
    }
    let (mut left, mut right) = (0, 0);
    for &i in &a.boundary {
        let s = side(ds.point(i).coords());
        if s.is_positive() {
            left += 1;
        } else if s.is_negative() {
            right += 1;
        }
    }
    Ok(a.cut + left.max(right))
}

/// All irrotatable halfspaces at level `τ`, sorted by canonical direction
/// then offset.
pub fn enumerate_irrotatable(ds: &DataSet, tau: DepthValue) -> Result<Vec<IrrotatableCertificate>> {
    check_dim(ds)?;
    tau.check_level()?;
    let found = affine_dimension(ds);
    if found < ds.dim() {
        return Err(Error::DegenerateAffineDimension { expected: ds.dim(), found });
    }
    let k = tau.required_count(ds.len());
    let mut certs: Vec<IrrotatableCertificate> = level_certs(ds, k, k).into_iter().map(|c| c.into_cert(ds)).collect();
    certs.sort_by_cached_key(|c| c.halfspace.key());
    Ok(certs)
}

/// Certificates valid at some level in `[k_lo, k_hi]`, each halfspace once.
fn level_certs(ds: &DataSet, k_lo: usize, k_hi: usize) -> Vec<LevelCert> {
    if ds.dim() == 2 {
        sweep_planar(ds, k_lo, k_hi)
    } else {
        enumerate_solid(ds, k_lo, k_hi)
    }
}

fn enumerate_solid(ds: &DataSet, k_lo: usize, k_hi: usize) -> Vec<LevelCert> {
    let rows: Vec<Vec<Scalar>> = ds.points().iter().map(|p| p.coords().to_vec()).collect();
    let ints = grid::scale_to_integers(&rows);
    match grid::narrow_to(&ints, grid::SOLID_LIMIT_BITS) {
        Some(small) => solid_with(&small, k_lo, k_hi),
        None => solid_with(&ints, k_lo, k_hi),
    }
}

type V3<T> = [T; 3];

fn sub3<T: Int>(a: &V3<T>, b: &V3<T>) -> V3<T> {
    [a[0].sub(&b[0]), a[1].sub(&b[1]), a[2].sub(&b[2])]
}

fn cross3i<T: Int>(a: &V3<T>, b: &V3<T>) -> V3<T> {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

fn dot3i<T: Int>(a: &V3<T>, b: &V3<T>) -> T {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

/// Planes through three distinct sample positions, each visited once from
/// its lexicographically first spanning triple.
fn solid_with<T: Int + Into<num_bigint::BigInt>>(rows: &[Vec<T>], k_lo: usize, k_hi: usize) -> Vec<LevelCert> {
    let mut groups: BTreeMap<V3<T>, Vec<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        groups.entry([r[0].clone(), r[1].clone(), r[2].clone()]).or_default().push(i);
    }
    let pos: Vec<(V3<T>, Vec<usize>)> = groups.into_iter().collect();
    let g = pos.len();
    (0..g)
        .into_par_iter()
        .flat_map_iter(|a| {
            let pos = &pos;
            (a + 1..g).flat_map(move |b| {
                let ab = sub3(&pos[b].0, &pos[a].0);
                (b + 1..g).filter_map(move |c| solid_plane(pos, a, b, c, &ab)).flatten()
            })
        })
        .filter(|c| in_range(c.cut_count, c.extra, k_lo, k_hi))
        .collect()
}

/// Both certificates of the plane through positions `a < b < c`, unless an
/// earlier triple spans the same plane.
fn solid_plane<T: Int + Into<num_bigint::BigInt>>(
    pos: &[(V3<T>, Vec<usize>)],
    a: usize,
    b: usize,
    c: usize,
    ab: &V3<T>,
) -> Option<[LevelCert; 2]> {
    let pa = &pos[a].0;
    let n = cross3i(ab, &sub3(&pos[c].0, pa));
    let zero = T::zero();
    if n.iter().all(|x| *x == zero) {
        return None;
    }
    let (mut below, mut above) = (0, 0);
    let mut on = Vec::new();
    for (j, (p, ix)) in pos.iter().enumerate() {
        match dot3i(&n, &sub3(p, pa)).cmp(&zero) {
            std::cmp::Ordering::Less => below += ix.len(),
            std::cmp::Ordering::Greater => above += ix.len(),
            std::cmp::Ordering::Equal => on.push(j),
        }
    }
    if on[0] != a || on[1] != b {
        return None;
    }
    // `c` must be the first position off the line through `a` and `b`.
    let first_off = on[2..]
        .iter()
        .find(|&&j| cross3i(ab, &sub3(&pos[j].0, pa)).iter().any(|x| *x != zero));
    if first_off != Some(&c) {
        return None;
    }
    let mut best = (0, vec![pos[on[0]].1[0]]);
    for (x, &ga) in on.iter().enumerate() {
        for &gb in &on[x + 1..] {
            let q = &pos[ga].0;
            let e = sub3(&pos[gb].0, q);
            let (mut left, mut right) = (0, 0);
            for &j in &on {
                let s = dot3i(&n, &cross3i(&e, &sub3(&pos[j].0, q)));
                if s > zero {
                    left += pos[j].1.len();
                } else if s < zero {
                    right += pos[j].1.len();
                }
            }
            if left.max(right) > best.0 {
                best = (left.max(right), vec![pos[ga].1[0], pos[gb].1[0]]);
            }
        }
    }
    if best.1.len() == 1 {
        best.1 = vec![pos[on[0]].1[0], pos[on[1]].1[0]];
    }
    let mut boundary: Vec<usize> = on.iter().flat_map(|&j| pos[j].1.iter().copied()).collect();
    boundary.sort_unstable();
    let normal: Vec<Scalar> = n.iter().map(|x| Scalar::from_integer(x.clone().into())).collect();
    let normal = Direction::new(normal).expect("nonzero normal");
    let cert = |normal: Direction, cut: usize| LevelCert {
        halfspace: LazyHalfspace::Through {
            normal,
            point: pos[a].1[0],
            built: OnceLock::new(),
        },
        boundary_points: boundary.clone(),
        pivot_flat: best.1.clone(),
        cut_count: cut,
        extra: best.0,
    };
    Some([cert(normal.neg(), above), cert(normal, below)])
}

struct Group<T> {
    dir: [T; 2],
    key: f64,
    members: Vec<usize>,
    min_index: usize,
    far_mult: usize,
    far_index: usize,
}

fn sweep_planar(ds: &DataSet, k_lo: usize, k_hi: usize) -> Vec<LevelCert> {
    let rows: Vec<Vec<Scalar>> = ds.points().iter().map(|p| p.coords().to_vec()).collect();
    let ints = grid::scale_to_integers(&rows);
    match grid::narrow(&ints) {
        Some(small) => sweep_with(&small, k_lo, k_hi),
        None => sweep_with(&ints, k_lo, k_hi),
    }
}

fn sweep_with<T: Int + Into<num_bigint::BigInt>>(
    rows: &[Vec<T>],
    k_lo: usize,
    k_hi: usize,
) -> Vec<LevelCert> {
    let pts: Vec<[T; 2]> = rows.iter().map(|r| grid::pair(r)).collect();
    (0..pts.len())
        .into_par_iter()
        .flat_map_iter(|i| lines_through(&pts, i, k_lo, k_hi))
        .collect()
}

/// Irrotatable halfspaces whose boundary line has `i` as its smallest index.
fn lines_through<T: Int + Into<num_bigint::BigInt>>(
    pts: &[[T; 2]],
    i: usize,
    k_lo: usize,
    k_hi: usize,
) -> Vec<LevelCert> {
    let n = pts.len();
    let mut dups = Vec::new();
    let mut vs: Vec<([T; 2], usize, f64)> = Vec::with_capacity(n);
    for (j, p) in pts.iter().enumerate() {
        if j == i {
            continue;
        }
        let v = [p[0].sub(&pts[i][0]), p[1].sub(&pts[i][1])];
        if v[0] == T::zero() && v[1] == T::zero() {
            if j < i {
                return Vec::new();
            }
            dups.push(j);
        } else {
            let key = grid::angle_key(&v);
            vs.push((v, j, key));
        }
    }
    vs.sort_by(|a, b| {
        cmp_angle_keyed(&a.0, a.2, &b.0, b.2)
            .then_with(|| grid::dot2(&a.0, &a.0).cmp(&grid::dot2(&b.0, &b.0)))
            .then(a.1.cmp(&b.1))
    });
    let mut groups: Vec<Group<T>> = Vec::new();
    for (v, j, key) in &vs {
        match groups.last_mut() {
            Some(g) if cmp_angle_keyed(&g.dir, g.key, v, *key) == std::cmp::Ordering::Equal => {
                g.members.push(*j);
                g.min_index = g.min_index.min(*j);
                let far = &pts[g.far_index];
                if far == &pts[*j] {
                    g.far_mult += 1;
                } else {
                    g.far_mult = 1;
                    g.far_index = *j;
                }
            }
            _ => groups.push(Group {
                dir: v.clone(),
                key: *key,
                members: vec![*j],
                min_index: *j,
                far_mult: 1,
                far_index: *j,
            }),
        }
    }
    let mut prefix = vec![0usize; groups.len() + 1];
    for (g, grp) in groups.iter().enumerate() {
        prefix[g + 1] = prefix[g] + grp.members.len();
    }
    let total = prefix[groups.len()];
    let here_mult = dups.len() + 1;
    let mut out = Vec::new();
    for (g, grp) in groups.iter().enumerate() {
        let r = &grp.dir;
        let neg = [r[0].neg(), r[1].neg()];
        let nkey = grid::angle_key(&neg);
        let vs_neg = |h: &Group<T>| cmp_angle_keyed(&h.dir, h.key, &neg, nkey);
        let o = groups.partition_point(|h| vs_neg(h) == std::cmp::Ordering::Less);
        let opp = groups.get(o).filter(|h| vs_neg(h) == std::cmp::Ordering::Equal);
        let upper = grid::half(r) == 0;
        if !upper && opp.is_some() {
            continue;
        }
        if grp.min_index < i || opp.is_some_and(|h| h.min_index < i) {
            continue;
        }
        let left = if upper {
            prefix[o] - prefix[g + 1]
        } else {
            total - prefix[g + 1] + prefix[o]
        };
        let on = here_mult + grp.members.len() + opp.map_or(0, |h| h.members.len());
        let right = n - on - left;
        let (other_mult, other_index) = opp.map_or((here_mult, i), |h| (h.far_mult, h.far_index));
        let (pivot_mult, pivot_index) = if other_mult < grp.far_mult {
            (other_mult, other_index)
        } else {
            (grp.far_mult, grp.far_index)
        };
        let extra = on - pivot_mult;
        let to_scalar = |t: &T| Scalar::from_integer(t.clone().into());
        for (cut, sign) in [(right, 1), (left, -1)] {
            if !in_range(cut, extra, k_lo, k_hi) {
                continue;
            }
            let normal = vec![to_scalar(&r[1].neg()) * int(sign), to_scalar(&r[0]) * int(sign)];
            let normal = Direction::new(normal).expect("nonzero");
            let mut boundary = vec![i];
            boundary.extend(&dups);
            boundary.extend(&grp.members);
            if let Some(h) = opp {
                boundary.extend(&h.members);
            }
            boundary.sort_unstable();
            out.push(LevelCert {
                halfspace: LazyHalfspace::Through {
                    normal,
                    point: i,
                    built: OnceLock::new(),
                },
                boundary_points: boundary,
                pivot_flat: vec![pivot_index],
                cut_count: cut,
                extra,
            });
        }
    }
    out
}

/// For a certificate cutting fewer than `⌈nτ⌉ - 1` points, the lower level
/// `(cut + 1)/n` at which the same halfspace is irrotatable.
pub fn lower_level(cert: &IrrotatableCertificate, ds: &DataSet, tau: DepthValue) -> Result<Option<DepthValue>> {
    let k = tau.required_count(ds.len());
    if cert.cut_count + 1 >= k {
        return Ok(None);
    }
    let lower = DepthValue::new(cert.cut_count as u64 + 1, ds.len() as u64);
    let (ok, _) = is_irrotatable(&cert.halfspace, ds, lower)?;
    Ok(ok.then_some(lower))
}

fn region_1d(ds: &DataSet, k: usize) -> Result<Polytope> {
    let n = ds.len();
    let mut xs: Vec<Scalar> = ds.points().iter().map(|p| p.coords()[0].clone()).collect();
    xs.sort();
    if k == 0 || k > n - k + 1 {
        return Err(Error::TauExceedsMaxDepth(format!("{k}/{n}")));
    }
    let (a, b) = (xs[k - 1].clone(), xs[n - k].clone());
    let hs = vec![
        Halfspace::new(Direction::from_ints(&[1]).expect("nonzero"), a.clone()),
        Halfspace::new(Direction::from_ints(&[-1]).expect("nonzero"), -b.clone()),
    ];
    let one = int(1);
    Ok(intersect_in_box(&hs, 1, &[&a - &one], &[&b + &one]))
}

/// `{x : D(x) >= τ}` as an exact polytope.
///
/// Fails with `TauExceedsMaxDepth` when the region is empty, which is
/// certified by checking that a point of the computed intersection has
/// depth at least `τ`.
pub fn depth_region(ds: &DataSet, tau: DepthValue) -> Result<Polytope> {
    tau.check_level()?;
    let k = tau.required_count(ds.len());
    region_for_count(ds, k)
}

fn region_for_count(ds: &DataSet, k: usize) -> Result<Polytope> {
    let d = ds.dim();
    if d == 1 {
        return region_1d(ds, k);
    }
    check_dim(ds)?;
    let found = affine_dimension(ds);
    if found < d {
        return Err(Error::DegenerateAffineDimension { expected: d, found });
    }
    region_from_certs(ds, &level_certs(ds, k, k), k)
}

fn region_from_certs(ds: &DataSet, certs: &[LevelCert], k: usize) -> Result<Polytope> {
    let d = ds.dim();
    let tau = DepthValue::new(k as u64, ds.len() as u64);
    let hs: Vec<Halfspace> = certs
        .iter()
        .filter(|c| c.valid_at(k))
        .map(|c| c.halfspace(ds))
        .collect();
    let (mut lo, mut hi) = ds.bounding_box();
    for c in lo.iter_mut() {
        *c -= int(1);
    }
    for c in hi.iter_mut() {
        *c += int(1);
    }
    let region = intersect_in_box(&hs, d, &lo, &hi);
    let exceeded = || Error::TauExceedsMaxDepth(tau.to_string());
    if region.unbounded || region.is_empty() {
        return Err(exceeded());
    }
    let probe = probe_point(&region).expect("nonempty");
    if (tukey_depth(&probe, ds)?.0.count as usize) < k {
        return Err(exceeded());
    }
    Ok(region)
}

/// Largest depth attained on the convex set `within`, with a point attaining it.
pub fn max_depth_within(ds: &DataSet, within: &Polytope) -> Result<(DepthValue, Point)> {
    let d = ds.dim();
    if within.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: within.dim() });
    }
    if d > 1 {
        check_dim(ds)?;
        let found = affine_dimension(ds);
        if found < d {
            return Err(Error::DegenerateAffineDimension { expected: d, found });
        }
    }
    let hi = (0..d)
        .map(|c| {
            let mut xs: Vec<&Scalar> = ds.points().iter().map(|p| &p.coords()[c]).collect();
            xs.sort();
            max_projected_count(&xs)
        })
        .min()
        .expect("d >= 1");
    let certs = if d == 1 { Vec::new() } else { level_certs(ds, 1, hi) };
    let (mut lo, mut hi) = (0, hi);
    let mut best = None;
    // Regions are nested, so nonemptiness of the slice is monotone in k.
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match slice_point(ds, &certs, within, mid)? {
            Some(p) => {
                lo = (tukey_depth(&p, ds)?.0.count as usize).max(mid);
                best = Some(p);
            }
            None => hi = mid - 1,
        }
    }
    let point = match best {
        Some(p) => p,
        None => within.vertex_centroid().ok_or_else(|| Error::Precondition("empty set".into()))?,
    };
    let count = tukey_depth(&point, ds)?.0.count;
    Ok((DepthValue::new(count, ds.len() as u64), point))
}

/// A point of `within` with depth at least `k`, if one exists.
fn slice_point(ds: &DataSet, certs: &[LevelCert], within: &Polytope, k: usize) -> Result<Option<Point>> {
    let d = ds.dim();
    let mut hs: Vec<Halfspace> = if d == 1 {
        match region_1d(ds, k) {
            Ok(r) => r.halfspaces,
            Err(Error::TauExceedsMaxDepth(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    } else {
        certs.iter().filter(|c| c.valid_at(k)).map(|c| c.halfspace(ds)).collect()
    };
    hs.extend(within.halfspaces.iter().cloned());
    let (mut lo, mut hi) = ds.bounding_box();
    for c in lo.iter_mut() {
        *c -= int(1);
    }
    for c in hi.iter_mut() {
        *c += int(1);
    }
    let slice = intersect_in_box(&hs, d, &lo, &hi);
    let Some(p) = probe_point(&slice) else {
        return Ok(None);
    };
    let ok = tukey_depth(&p, ds)?.0.count as usize >= k;
    Ok(ok.then_some(p))
}

/// A point of a bounded region for depth checks. In space a vertex keeps
/// the numbers small; in the plane the centroid tends to be deeper.
fn probe_point(region: &Polytope) -> Option<Point> {
    if region.dim() == 3 {
        region.vertices.first().cloned()
    } else {
        region.vertex_centroid()
    }
}

/// How the median averages the deepest region.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MedianAverage {
    /// Uniform barycenter of the region.
    #[default]
    Barycenter,
    /// Mean of the region's vertices.
    VertexAverage,
}

#[derive(Clone, Debug)]
pub struct MedianResult {
    pub region: Polytope,
    pub lambda_star: DepthValue,
    pub median: Point,
}

/// Deepest region, maximal depth and Tukey median.
pub fn median_region(ds: &DataSet) -> Result<MedianResult> {
    median_region_with(ds, MedianAverage::Barycenter)
}

pub fn median_region_with(ds: &DataSet, average: MedianAverage) -> Result<MedianResult> {
    let d = ds.dim();
    if d > 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    let found = affine_dimension(ds);
    if found < d {
        return Err(Error::DegenerateAffineDimension { expected: d, found });
    }
    let (k, region) = if d == 1 {
        let mut xs: Vec<&Scalar> = ds.points().iter().map(|p| &p.coords()[0]).collect();
        xs.sort();
        let k = max_projected_count(&xs);
        (k, region_1d(ds, k)?)
    } else {
        deepest_level(ds)?
    };
    let median = match average {
        MedianAverage::Barycenter => region.barycenter(),
        MedianAverage::VertexAverage => region.vertex_centroid(),
    }
    .expect("nonempty region");
    Ok(MedianResult {
        region,
        lambda_star: DepthValue::new(k as u64, ds.len() as u64),
        median,
    })
}

/// Largest `min(#{x <= v}, #{x >= v})` over sample values `v` of a sorted list.
pub(crate) fn max_projected_count(xs: &[&Scalar]) -> usize {
    let n = xs.len();
    xs.iter()
        .map(|v| {
            let le = xs.partition_point(|x| x <= v);
            let ge = n - xs.partition_point(|x| x < v);
            le.min(ge)
        })
        .max()
        .expect("nonempty")
}

/// Largest level with a nonempty region, bracketed below by the depth of
/// the coordinatewise median and above by the deepest projection onto each
/// axis, then found by bisection over one batch of certificates.
fn deepest_level(ds: &DataSet) -> Result<(usize, Polytope)> {
    let start = coordinatewise_median(ds);
    let mut lo = (tukey_depth(&start, ds)?.0.count as usize).max(1);
    let mut hi = (0..ds.dim())
        .map(|c| {
            let mut xs: Vec<&Scalar> = ds.points().iter().map(|p| &p.coords()[c]).collect();
            xs.sort();
            max_projected_count(&xs)
        })
        .min()
        .expect("d >= 1");
    let certs = level_certs(ds, lo, hi);
    let mut best = region_from_certs(ds, &certs, lo)?;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match region_from_certs(ds, &certs, mid) {
            Ok(r) => {
                let c = probe_point(&r).expect("nonempty");
                let reached = (tukey_depth(&c, ds)?.0.count as usize).min(hi);
                if reached > mid {
                    lo = reached;
                    best = region_from_certs(ds, &certs, lo)?;
                } else {
                    lo = mid;
                    best = r;
                }
            }
            Err(Error::TauExceedsMaxDepth(_)) => hi = mid - 1,
            Err(e) => return Err(e),
        }
    }
    Ok((lo, best))
}

fn coordinatewise_median(ds: &DataSet) -> Point {
    let n = ds.len();
    Point::new(
        (0..ds.dim())
            .map(|c| {
                let mut v: Vec<&Scalar> = ds.points().iter().map(|p| &p.coords()[c]).collect();
                v.sort();
                v[(n - 1) / 2].clone()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    fn ds_a() -> DataSet {
        DataSet::from_ints(&[&[0, 0], &[2, 0], &[1, 1], &[1, 1]]).unwrap()
    }

    fn half() -> DepthValue {
        DepthValue::new(1, 2)
    }

    fn brute_force(ds: &DataSet, tau: DepthValue) -> Vec<IrrotatableCertificate> {
        let mut out: Vec<IrrotatableCertificate> = Vec::new();
        for i in 0..ds.len() {
            for j in 0..ds.len() {
                let v = sub(ds.point(j).coords(), ds.point(i).coords());
                let Ok(n) = Direction::new(vec![-v[1].clone(), v[0].clone()]) else { continue };
                let h = Halfspace::through(n, ds.point(i));
                if let (true, Some(c)) = is_irrotatable(&h, ds, tau).unwrap() {
                    if !out.iter().any(|o| o.halfspace == c.halfspace) {
                        out.push(c);
                    }
                }
            }
        }
        out.sort_by(|a, b| a.halfspace.key().cmp(&b.halfspace.key()));
        out
    }

    #[test]
    fn rotation_about_middle_point() {
        let ds = DataSet::from_ints(&[&[0, -1], &[1, 0], &[0, 0], &[-1, 0]]).unwrap();
        let h = Halfspace::new(Direction::from_ints(&[0, 1]).unwrap(), int(0));
        let (ok, cert) = is_irrotatable(&h, &ds, half()).unwrap();
        assert!(ok);
        let cert = cert.unwrap();
        assert_eq!(cert.cut_count, 1);
        assert_eq!(cert.boundary_points, vec![1, 2, 3]);
        assert_eq!(rotation_cut(&h, &ds, &[2]).unwrap(), 2);
        assert_eq!(rotation_cut(&h, &ds, &[1]).unwrap(), 3);
    }

    #[test]
    fn overcutting_halfspace_is_rejected() {
        let h = Halfspace::new(Direction::from_ints(&[0, 1]).unwrap(), int(1));
        assert!(!is_irrotatable(&h, &ds_a(), half()).unwrap().0);
        let far = Halfspace::new(Direction::from_ints(&[0, 1]).unwrap(), int(7));
        assert!(matches!(is_irrotatable(&far, &ds_a(), half()), Err(Error::EmptyBoundary)));
    }

    #[test]
    fn degenerate_example_certificates() {
        let ds = ds_a();
        let certs = enumerate_irrotatable(&ds, half()).unwrap();
        assert_eq!(certs.len(), 4);
        for c in &certs {
            assert_eq!(c.boundary_points.len(), 3);
            assert!(c.boundary_points.contains(&2) && c.boundary_points.contains(&3));
        }
        assert!(certs.iter().any(|c| c.cut_count == 0));
        for c in &certs {
            if c.cut_count == 0 {
                assert_eq!(lower_level(c, &ds, half()).unwrap(), Some(DepthValue::new(1, 4)));
            }
        }
        let quarter = enumerate_irrotatable(&ds, DepthValue::new(1, 4)).unwrap();
        assert!(quarter.iter().all(|c| c.cut_count == 0));
    }

    #[test]
    fn sweep_matches_brute_force() {
        let sets: Vec<DataSet> = vec![
            ds_a(),
            DataSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap(),
            DataSet::from_ints(&[&[0, 0], &[1, 1], &[2, 2], &[3, 3], &[0, 3], &[3, 0], &[1, 1], &[2, 1]]).unwrap(),
            DataSet::from_ints(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[1, 1], &[1, 1], &[2, 2], &[3, 1]]).unwrap(),
        ];
        for ds in &sets {
            for k in 1..=ds.len() {
                let tau = DepthValue::new(k as u64, ds.len() as u64);
                let fast: Vec<_> = enumerate_irrotatable(ds, tau).unwrap();
                let slow = brute_force(ds, tau);
                assert_eq!(fast.len(), slow.len(), "k={k} {ds:?}");
                for (a, b) in fast.iter().zip(&slow) {
                    assert_eq!(a.halfspace, b.halfspace);
                    assert_eq!(a.cut_count, b.cut_count);
                    assert_eq!(a.boundary_points, b.boundary_points);
                }
            }
        }
    }

    #[test]
    fn triangle_keeps_its_edges() {
        let ds = DataSet::from_ints(&[&[0, 0], &[3, 0], &[0, 3]]).unwrap();
        let certs = enumerate_irrotatable(&ds, DepthValue::new(1, 3)).unwrap();
        assert_eq!(certs.len(), 3);
        let hull = depth_region(&ds, DepthValue::new(1, 3)).unwrap();
        assert_eq!(hull.vertices.len(), 3);
    }

    #[test]
    fn regions_of_small_sets() {
        let r = depth_region(&ds_a(), half()).unwrap();
        assert_eq!(r.vertices, vec![Point::from_ints(&[1, 1])]);
        assert!(matches!(depth_region(&ds_a(), DepthValue::new(3, 4)), Err(Error::TauExceedsMaxDepth(_))));

        let sq = DataSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let r = depth_region(&sq, half()).unwrap();
        assert_eq!(r.vertices, vec![Point::new(vec![ratio(1, 2), ratio(1, 2)])]);
    }

    #[test]
    fn medians() {
        let line = DataSet::new([1, 2, 3, 4].iter().map(|&v| Point::from_ints(&[v])).collect()).unwrap();
        let m = median_region(&line).unwrap();
        assert_eq!(m.lambda_star, half());
        assert_eq!(m.median, Point::new(vec![ratio(5, 2)]));

        let m = median_region(&ds_a()).unwrap();
        assert_eq!(m.lambda_star, half());
        assert_eq!(m.median, Point::from_ints(&[1, 1]));

        let sq = DataSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let m = median_region(&sq).unwrap();
        assert_eq!(m.lambda_star, half());
        assert_eq!(m.median, Point::new(vec![ratio(1, 2), ratio(1, 2)]));

        let collinear = DataSet::from_ints(&[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        assert!(matches!(median_region(&collinear), Err(Error::DegenerateAffineDimension { .. })));
    }

    #[test]
    fn solid_regions() {
        let ds = DataSet::from_ints(&[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 1]]).unwrap();
        let hull = depth_region(&ds, DepthValue::new(1, 5)).unwrap();
        assert_eq!(hull.vertices.len(), 4);
        let m = median_region(&ds).unwrap();
        assert_eq!(m.lambda_star, DepthValue::new(2, 5));
        assert!(m.region.contains(&Point::from_ints(&[1, 1, 1])));
    }
}
