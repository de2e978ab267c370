use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{affine_dimension_of, dot, int, linalg, sub, Direction, Halfspace, Point, Scalar};
use crate::error::{Error, Result};

/// Convex polyhedron carried in both representations.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub halfspaces: Vec<Halfspace>,
    /// Extreme points. For a bounded polytope this is the V-representation.
    pub vertices: Vec<Point>,
    /// Affine dimension of the vertex set; `None` when empty.
    pub affine_dim: Option<usize>,
    pub unbounded: bool,
    dim: usize,
}

impl Polytope {
    fn from_parts(halfspaces: Vec<Halfspace>, mut vertices: Vec<Point>, unbounded: bool, dim: usize) -> Self {
        vertices.sort();
        vertices.dedup();
        let affine_dim = if vertices.is_empty() {
            None
        } else {
            Some(affine_dimension_of(&vertices))
        };
        Polytope {
            halfspaces,
            vertices,
            affine_dim,
            unbounded,
            dim,
        }
    }

    pub fn empty(halfspaces: Vec<Halfspace>, dim: usize) -> Self {
        Polytope::from_parts(halfspaces, Vec::new(), false, dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && !self.unbounded
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x.coords()))
    }

    pub fn vertex_centroid(&self) -> Option<Point> {
        Point::centroid(&self.vertices)
    }

    /// For each halfspace, the vertices on its boundary.
    pub fn tight_vertices(&self, h: &Halfspace) -> Vec<&Point> {
        self.vertices.iter().filter(|v| h.slack(v.coords()).is_zero()).collect()
    }

    /// Uniform barycenter: vertex centroid for 0/1-dimensional regions,
    /// area- or volume-weighted for 2/3-dimensional ones.
    pub fn barycenter(&self) -> Option<Point> {
        let dim = self.affine_dim?;
        match dim {
            0 | 1 => self.vertex_centroid(),
            2 => Some(planar_barycenter(&self.vertices)),
            _ => Some(solid_barycenter(self)),
        }
    }
}

/// Affine frame `c + s a + t b` of the plane through a planar point set.
struct PlaneFrame {
    c: Point,
    a: Vec<Scalar>,
    b: Vec<Scalar>,
    /// Inverse Gram matrix entries scaled by the determinant; `None` when
    /// `(a, b)` is the standard basis of R^2.
    gram: Option<[Scalar; 4]>,
}

impl PlaneFrame {
    fn of(points: &[Point]) -> Self {
        let c = Point::centroid(points).expect("nonempty");
        if c.dim() == 2 {
            return PlaneFrame {
                c,
                a: vec![int(1), int(0)],
                b: vec![int(0), int(1)],
                gram: None,
            };
        }
        let a = points
            .iter()
            .map(|p| sub(&p.0, &c.0))
            .find(|v| v.iter().any(|x| !x.is_zero()))
            .expect("planar set has extent");
        let b = points
            .iter()
            .map(|p| sub(&p.0, &c.0))
            .find(|v| linalg::rank(&[a.clone(), v.clone()]) == 2)
            .expect("planar set spans two dimensions");
        let (aa, ab, bb) = (dot(&a, &a), dot(&a, &b), dot(&b, &b));
        let det = &aa * &bb - &ab * &ab;
        PlaneFrame {
            c,
            gram: Some([aa, ab, bb, det]),
            a,
            b,
        }
    }

    /// Coordinates of `p - c` in the basis `(a, b)`.
    fn coords(&self, p: &Point) -> (Scalar, Scalar) {
        let w = sub(&p.0, &self.c.0);
        match &self.gram {
            None => (w[0].clone(), w[1].clone()),
            Some([aa, ab, bb, det]) => {
                let (ra, rb) = (dot(&self.a, &w), dot(&self.b, &w));
                ((&ra * bb - &rb * ab) / det, (aa * &rb - ab * &ra) / det)
            }
        }
    }

    fn point(&self, s: &Scalar, t: &Scalar) -> Point {
        Point(
            self.c
                .0
                .iter()
                .zip(self.a.iter().zip(&self.b))
                .map(|(ci, (ai, bi))| ci + ai * s + bi * t)
                .collect(),
        )
    }
}

fn half(v: &(Scalar, Scalar)) -> u8 {
    if v.1.is_positive() || (v.1.is_zero() && v.0.is_positive()) {
        0
    } else {
        1
    }
}

fn cross2(a: &(Scalar, Scalar), b: &(Scalar, Scalar)) -> Scalar {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Plane coordinates of the points, sorted counter-clockwise around their centroid.
fn ordered_coords(frame: &PlaneFrame, points: &[Point]) -> Vec<((Scalar, Scalar), Point)> {
    let mut tagged: Vec<((Scalar, Scalar), Point)> = points.iter().map(|p| (frame.coords(p), p.clone())).collect();
    tagged.sort_by(|(u, _), (v, _)| {
        half(u)
            .cmp(&half(v))
            .then_with(|| Scalar::zero().cmp(&cross2(u, v)))
    });
    tagged
}

fn planar_barycenter(points: &[Point]) -> Point {
    if points[0].dim() == 2 {
        return integer_barycenter(points);
    }
    let frame = PlaneFrame::of(points);
    let coords: Vec<(Scalar, Scalar)> = ordered_coords(&frame, points).into_iter().map(|(c, _)| c).collect();
    let mut area = Scalar::zero();
    let mut sx = Scalar::zero();
    let mut sy = Scalar::zero();
    for i in 0..coords.len() {
        let p = &coords[i];
        let q = &coords[(i + 1) % coords.len()];
        let w = cross2(p, q);
        sx += &w * (&p.0 + &q.0);
        sy += &w * (&p.1 + &q.1);
        area += w;
    }
    // Fan triangles from the origin (the vertex centroid): centroid = (0 + p + q) / 3.
    let three = int(3);
    frame.point(&(sx / (&area * &three)), &(sy / (&area * &three)))
}

/// Planar barycenter on integer offsets `kL (p - c)`, with `L` the common
/// denominator and `c` the vertex centroid of the `k` points.
fn integer_barycenter(points: &[Point]) -> Point {
    let rows: Vec<Vec<Scalar>> = points.iter().map(|p| p.0.clone()).collect();
    let ints = crate::grid::scale_to_integers(&rows);
    let l = rows
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let k = BigInt::from(points.len());
    let sum = [
        ints.iter().map(|r| &r[0]).sum::<BigInt>(),
        ints.iter().map(|r| &r[1]).sum::<BigInt>(),
    ];
    let mut w: Vec<[BigInt; 2]> = ints.iter().map(|r| [&k * &r[0] - &sum[0], &k * &r[1] - &sum[1]]).collect();
    w.sort_by(crate::grid::cmp_angle);
    let (mut area, mut sx, mut sy) = (BigInt::zero(), BigInt::zero(), BigInt::zero());
    for i in 0..w.len() {
        let (p, q) = (&w[i], &w[(i + 1) % w.len()]);
        let c = crate::grid::cross(p, q);
        sx += &c * (&p[0] + &q[0]);
        sy += &c * (&p[1] + &q[1]);
        area += c;
    }
    let den = Scalar::from_integer(area * 3 * &k * &l);
    let kc = Scalar::from_integer(k);
    Point(vec![
        Scalar::from_integer(sum[0].clone()) / (&kc * Scalar::from_integer(l.clone())) + Scalar::from_integer(sx) / &den,
        Scalar::from_integer(sum[1].clone()) / (&kc * Scalar::from_integer(l)) + Scalar::from_integer(sy) / &den,
    ])
}

/// Volume-weighted barycenter from tetrahedra fanned out of one vertex
/// over a triangulation of each facet, on integer coordinates `L v`.
fn solid_barycenter(poly: &Polytope) -> Point {
    let rows: Vec<Vec<Scalar>> = poly.vertices.iter().map(|v| v.0.clone()).collect();
    let (ints, l) = crate::grid::scale_with_factor(&rows);
    let apex = &ints[0];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut vol = BigInt::zero();
    let mut acc = vec![BigInt::zero(); 3];
    for h in &poly.halfspaces {
        let mut coeffs = h.normal.coords().to_vec();
        coeffs.push(h.offset.clone());
        let hi = crate::grid::scale_to_integers(&[coeffs]).remove(0);
        let rhs = &hi[3] * &l;
        let tight: Vec<usize> = (0..ints.len())
            .filter(|&i| ints[i].iter().zip(&hi).map(|(a, b)| a * b).sum::<BigInt>() == rhs)
            .collect();
        if tight.len() < 3 || !seen.insert(tight.clone()) {
            continue;
        }
        // Drop the coordinate where the facet normal is largest.
        let drop = (0..3).max_by_key(|&k| hi[k].abs()).expect("three coordinates");
        let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
        let k = BigInt::from(tight.len());
        let sum: Vec<BigInt> = keep.iter().map(|&c| tight.iter().map(|&i| &ints[i][c]).sum()).collect();
        let mut ring: Vec<([BigInt; 2], usize)> = tight
            .iter()
            .map(|&i| ([&k * &ints[i][keep[0]] - &sum[0], &k * &ints[i][keep[1]] - &sum[1]], i))
            .collect();
        if ring.iter().all(|(w, _)| w[0].is_zero() && w[1].is_zero()) {
            continue;
        }
        ring.sort_by(|a, b| crate::grid::cmp_angle(&a.0, &b.0));
        let f = &ints[ring[0].1];
        for w in ring[1..].windows(2) {
            let (p, q) = (&ints[w[0].1], &ints[w[1].1]);
            let e1: Vec<BigInt> = (0..3).map(|c| &f[c] - &apex[c]).collect();
            let e2: Vec<BigInt> = (0..3).map(|c| &p[c] - &apex[c]).collect();
            let e3: Vec<BigInt> = (0..3).map(|c| &q[c] - &apex[c]).collect();
            let det = &e1[0] * (&e2[1] * &e3[2] - &e2[2] * &e3[1]) - &e1[1] * (&e2[0] * &e3[2] - &e2[2] * &e3[0])
                + &e1[2] * (&e2[0] * &e3[1] - &e2[1] * &e3[0]);
            let v = det.abs();
            for c in 0..3 {
                acc[c] += &v * (&apex[c] + &f[c] + &p[c] + &q[c]);
            }
            vol += v;
        }
    }
    let den = Scalar::from_integer(vol * 4 * l);
    Point(acc.into_iter().map(|s| Scalar::from_integer(s) / &den).collect())
}

/// Intersects halfspaces in dimension 1, 2 or 3.
///
/// Returns the exact extreme points. Empty intersections come back with no
/// vertices; unbounded ones set `unbounded` and list the extreme points that
/// exist.
pub fn intersect_halfspaces(hs: &[Halfspace], d: usize) -> Result<Polytope> {
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    if hs.is_empty() {
        return Err(Error::Precondition("no halfspaces to intersect".into()));
    }
    for h in hs {
        if h.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: h.dim(),
            });
        }
    }
    // Every vertex solves a nonsingular integer system; Cramer's rule with
    // Hadamard's inequality bounds its coordinates by M^d.
    let mut m = BigInt::one();
    for h in hs {
        let mut den = h.offset.denom().clone();
        for c in h.normal.coords() {
            den = den.lcm(c.denom());
        }
        let den = Scalar::from_integer(den);
        let mut l1 = (&h.offset * &den).abs();
        for c in h.normal.coords() {
            l1 += (c * &den).abs();
        }
        let l1 = l1.to_integer();
        if l1 > m {
            m = l1;
        }
    }
    let r = Scalar::from_integer(num_traits::pow(m, d) + BigInt::one());
    let lo = vec![-r.clone(); d];
    let hi = vec![r; d];
    Ok(intersect_in_box(hs, d, &lo, &hi))
}

/// Intersection clipped to the box `[lo, hi]`; vertices on the box boundary
/// mark the result as unbounded relative to the box and are dropped.
pub(crate) fn intersect_in_box(hs: &[Halfspace], d: usize, lo: &[Scalar], hi: &[Scalar]) -> Polytope {
    let raw = match d {
        1 => clip_interval(hs, lo, hi),
        2 => clip_polygon(hs, lo, hi),
        3 => clip_solid(hs, lo, hi),
        _ => unreachable!("dimension checked by callers"),
    };
    let on_box = |p: &Point| (0..d).any(|k| p.0[k] == lo[k] || p.0[k] == hi[k]);
    let unbounded = raw.iter().any(on_box);
    let vertices = raw.into_iter().filter(|p| !on_box(p)).collect();
    Polytope::from_parts(hs.to_vec(), vertices, unbounded, d)
}

fn clip_interval(hs: &[Halfspace], lo: &[Scalar], hi: &[Scalar]) -> Vec<Point> {
    let mut a = lo[0].clone();
    let mut b = hi[0].clone();
    for h in hs {
        let u = &h.normal.coords()[0];
        let bound = &h.offset / u;
        if u.is_positive() {
            if bound > a {
                a = bound;
            }
        } else if bound < b {
            b = bound;
        }
    }
    match a.cmp(&b) {
        std::cmp::Ordering::Greater => Vec::new(),
        std::cmp::Ordering::Equal => vec![Point(vec![a])],
        std::cmp::Ordering::Less => vec![Point(vec![a]), Point(vec![b])],
    }
}

/// Sutherland–Hodgman clipping of a convex polygon kept in boundary order.
/// Planar halfspace `a x + b y >= c` with integer coefficients.
#[derive(Clone)]
struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    approx: [f64; 3],
}

impl Line {
    fn new(h: &Halfspace) -> Self {
        let u = h.normal.coords();
        let mut l = h.offset.denom().clone();
        for c in u {
            l = l.lcm(c.denom());
        }
        let scale = |v: &Scalar| v.numer() * (&l / v.denom());
        let (a, b, c) = (scale(&u[0]), scale(&u[1]), scale(&h.offset));
        let approx = [big_f64(&a), big_f64(&b), big_f64(&c)];
        Line { a, b, c, approx }
    }

    fn axis(k: usize, sign: i64, q: &Scalar) -> Self {
        let mut e = vec![Scalar::zero(); 2];
        e[k] = int(sign);
        Line::new(&Halfspace::new(Direction::new(e).expect("unit"), q * int(sign)))
    }

    /// Sign of the slack at a homogeneous point with positive weight.
    fn side(&self, p: &Homog) -> Ordering {
        let fa = &self.approx;
        let s = fa[0] * p.approx[0] + fa[1] * p.approx[1] - fa[2] * p.approx[2];
        let mag = (fa[0] * p.approx[0]).abs() + (fa[1] * p.approx[1]).abs() + (fa[2] * p.approx[2]).abs();
        if s.is_finite() && mag.is_finite() && s.abs() > 1e-9 * mag {
            return s.partial_cmp(&0.0).expect("finite");
        }
        (&self.a * &p.x + &self.b * &p.y - &self.c * &p.w).sign_ord()
    }

    fn meet(&self, o: &Line) -> Homog {
        let mut w = &self.a * &o.b - &self.b * &o.a;
        let mut x = &self.c * &o.b - &self.b * &o.c;
        let mut y = &self.a * &o.c - &self.c * &o.a;
        if w.is_negative() {
            w = -w;
            x = -x;
            y = -y;
        }
        let g = x.gcd(&y).gcd(&w);
        if !g.is_zero() && !g.is_one() {
            x /= &g;
            y /= &g;
            w /= &g;
        }
        Homog::new(x, y, w)
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

fn big_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Point `(x / w, y / w)` with `w > 0` and coprime entries.
#[derive(Clone)]
struct Homog {
    x: BigInt,
    y: BigInt,
    w: BigInt,
    approx: [f64; 3],
}

impl PartialEq for Homog {
    fn eq(&self, o: &Self) -> bool {
        self.x == o.x && self.y == o.y && self.w == o.w
    }
}

impl Homog {
    fn new(x: BigInt, y: BigInt, w: BigInt) -> Self {
        let approx = [big_f64(&x), big_f64(&y), big_f64(&w)];
        Homog { x, y, w, approx }
    }

    fn from_point(p: &Point) -> Self {
        let l = p.0[0].denom().lcm(p.0[1].denom());
        let scale = |v: &Scalar| v.numer() * (&l / v.denom());
        Homog::new(scale(&p.0[0]), scale(&p.0[1]), l)
    }

    fn to_point(&self) -> Point {
        Point(vec![
            Scalar::new(self.x.clone(), self.w.clone()),
            Scalar::new(self.y.clone(), self.w.clone()),
        ])
    }
}

/// Sutherland-Hodgman clipping of a counter-clockwise polygon in integer
/// homogeneous coordinates. Each vertex carries the line its outgoing edge
/// lies on, so new vertices are solved from two input lines and their size
/// never compounds.
fn clip_polygon(hs: &[Halfspace], lo: &[Scalar], hi: &[Scalar]) -> Vec<Point> {
    let corner = |x: &Scalar, y: &Scalar| Homog::from_point(&Point(vec![x.clone(), y.clone()]));
    let mut poly: Vec<(Homog, Line)> = vec![
        (corner(&lo[0], &lo[1]), Line::axis(1, 1, &lo[1])),
        (corner(&hi[0], &lo[1]), Line::axis(0, -1, &hi[0])),
        (corner(&hi[0], &hi[1]), Line::axis(1, -1, &hi[1])),
        (corner(&lo[0], &hi[1]), Line::axis(0, 1, &lo[0])),
    ];
    for h in hs {
        let line = Line::new(h);
        let sides: Vec<Ordering> = poly.iter().map(|(p, _)| line.side(p)).collect();
        if sides.iter().all(|s| *s != Ordering::Less) {
            continue;
        }
        if sides.iter().all(|s| *s == Ordering::Less) {
            return Vec::new();
        }
        let k = poly.len();
        let mut out: Vec<(Homog, Line)> = Vec::with_capacity(k + 1);
        let push = |out: &mut Vec<(Homog, Line)>, p: Homog, l: Line| match out.last_mut() {
            Some(last) if last.0 == p => last.1 = l,
            _ => out.push((p, l)),
        };
        for i in 0..k {
            let j = (i + 1) % k;
            let (sa, sb) = (sides[i], sides[j]);
            let edge = &poly[i].1;
            if sa != Ordering::Less {
                let next = if sa == Ordering::Equal && sb == Ordering::Less { line.clone() } else { edge.clone() };
                push(&mut out, poly[i].0.clone(), next);
            }
            if sa == Ordering::Greater && sb == Ordering::Less {
                push(&mut out, edge.meet(&line), line.clone());
            } else if sa == Ordering::Less && sb == Ordering::Greater {
                push(&mut out, edge.meet(&line), edge.clone());
            }
        }
        while out.len() > 1 && out.first().map(|f| &f.0) == out.last().map(|l| &l.0) {
            out.pop();
        }
        poly = out;
    }
    poly.iter().map(|(p, _)| p.to_point()).collect()
}

/// Plane `n·x >= e` with coprime integer coefficients.
struct Plane3 {
    n: [BigInt; 3],
    e: BigInt,
    /// Coefficients scaled to unit max-norm.
    approx: [f64; 4],
}

impl Plane3 {
    fn new(h: &Halfspace) -> Self {
        let u = h.normal.coords();
        let row = [&u[0], &u[1], &u[2], &h.offset];
        let l = row.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut ints: Vec<BigInt> = row.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        for c in ints.iter_mut() {
            *c /= &g;
        }
        let f: Vec<f64> = ints.iter().map(big_f64).collect();
        let m = f.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let [a, b, c, e]: [BigInt; 4] = ints.try_into().expect("four");
        Plane3 {
            n: [a, b, c],
            e,
            approx: [f[0] / m, f[1] / m, f[2] / m, f[3] / m],
        }
    }

    fn exact(&self, v: &Vertex) -> BigInt {
        &self.n[0] * &v.x[0] + &self.n[1] * &v.x[1] + &self.n[2] * &v.x[2] - &self.e * &v.w
    }

    /// Sign of the slack, from floats when they are far from zero.
    fn side(&self, v: &Vertex) -> Ordering {
        let a = &self.approx;
        let x = &v.approx;
        let s = a[0] * x[0] + a[1] * x[1] + a[2] * x[2] - a[3];
        let scale = a[0].abs() * x[0].abs() + a[1].abs() * x[1].abs() + a[2].abs() * x[2].abs() + a[3].abs();
        if s.is_finite() && s.abs() > 1e-9 * scale {
            if s > 0.0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else {
            self.exact(v).sign_ord()
        }
    }
}

fn cross_int(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot_int(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

/// Vertex `x / w` with `w > 0` and coprime entries, plus its tight planes.
#[derive(Clone)]
struct Vertex {
    x: [BigInt; 3],
    w: BigInt,
    approx: [f64; 3],
    tight: BTreeSet<usize>,
}

impl Vertex {
    fn new(mut x: [BigInt; 3], mut w: BigInt, tight: BTreeSet<usize>) -> Self {
        if w.is_negative() {
            w = -w;
            for c in x.iter_mut() {
                *c = -&*c;
            }
        }
        let g = x.iter().fold(w.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            for c in x.iter_mut() {
                *c /= &g;
            }
            w /= &g;
        }
        let wf = big_f64(&w);
        let approx = [big_f64(&x[0]) / wf, big_f64(&x[1]) / wf, big_f64(&x[2]) / wf];
        Vertex { x, w, approx, tight }
    }

    fn same_place(&self, o: &Vertex) -> bool {
        self.w == o.w && self.x == o.x
    }

    /// Intersection of three planes by Cramer's rule.
    fn meet(p: &Plane3, q: &Plane3, r: &Plane3, tight: BTreeSet<usize>) -> Option<Self> {
        let qr = cross_int(&q.n, &r.n);
        let det = dot_int(&p.n, &qr);
        if det.is_zero() {
            return None;
        }
        // x = (e_p (q×r) + e_q (r×p) + e_r (p×q)) / det
        let rp = cross_int(&r.n, &p.n);
        let pq = cross_int(&p.n, &q.n);
        let x = [0, 1, 2].map(|k| &p.e * &qr[k] + &q.e * &rp[k] + &r.e * &pq[k]);
        Some(Vertex::new(x, det, tight))
    }

    fn to_point(&self) -> Point {
        Point(self.x.iter().map(|c| Scalar::new(c.clone(), self.w.clone())).collect())
    }
}

/// Incremental double description in integer homogeneous coordinates: each
/// clip keeps the feasible vertices and adds the crossings of cut edges,
/// solved from the edge's two planes and the new one.
fn clip_solid(hs: &[Halfspace], lo: &[Scalar], hi: &[Scalar]) -> Vec<Point> {
    let d = 3;
    let mut planes: Vec<Plane3> = Vec::new();
    for k in 0..d {
        let mut e = vec![Scalar::zero(); d];
        e[k] = Scalar::one();
        let pos = Direction::new(e).expect("unit");
        let neg = pos.neg();
        planes.push(Plane3::new(&Halfspace::new(pos, lo[k].clone())));
        planes.push(Plane3::new(&Halfspace::new(neg, -hi[k].clone())));
    }
    let mut verts: Vec<Vertex> = Vec::new();
    for mask in 0..8u32 {
        let ids: Vec<usize> = (0..d).map(|k| 2 * k + (mask >> k & 1) as usize).collect();
        let tight: BTreeSet<usize> = ids.iter().copied().collect();
        verts.push(Vertex::meet(&planes[ids[0]], &planes[ids[1]], &planes[ids[2]], tight).expect("box corner"));
    }
    for h in hs {
        let id = planes.len();
        planes.push(Plane3::new(h));
        let plane = &planes[id];
        let sides: Vec<Ordering> = verts.iter().map(|v| plane.side(v)).collect();
        if sides.iter().all(|s| *s != Ordering::Less) {
            for (v, s) in verts.iter_mut().zip(&sides) {
                if *s == Ordering::Equal {
                    v.tight.insert(id);
                }
            }
            continue;
        }
        if sides.iter().all(|s| *s == Ordering::Less) {
            return Vec::new();
        }
        let mut fresh: Vec<Vertex> = Vec::new();
        for a in 0..verts.len() {
            if sides[a] != Ordering::Greater {
                continue;
            }
            for b in 0..verts.len() {
                if sides[b] != Ordering::Less {
                    continue;
                }
                let common: Vec<usize> = verts[a].tight.intersection(&verts[b].tight).copied().collect();
                if common.len() < d - 1 {
                    continue;
                }
                let pair = common.iter().enumerate().find_map(|(i, &p)| {
                    common[i + 1..].iter().find_map(|&q| {
                        let c = cross_int(&planes[p].n, &planes[q].n);
                        c.iter().any(|x| !x.is_zero()).then_some((p, q))
                    })
                });
                let Some((p, q)) = pair else {
                    continue;
                };
                let blocked = verts
                    .iter()
                    .enumerate()
                    .any(|(c, v)| c != a && c != b && common.iter().all(|i| v.tight.contains(i)));
                if blocked {
                    continue;
                }
                let mut tight: BTreeSet<usize> = common.into_iter().collect();
                tight.insert(id);
                if let Some(v) = Vertex::meet(&planes[p], &planes[q], &planes[id], tight) {
                    fresh.push(v);
                }
            }
        }
        let mut kept: Vec<Vertex> = Vec::new();
        for (mut v, s) in verts.into_iter().zip(&sides) {
            if *s == Ordering::Equal {
                v.tight.insert(id);
            }
            if *s != Ordering::Less {
                kept.push(v);
            }
        }
        for f in fresh {
            if let Some(existing) = kept.iter_mut().find(|v| v.same_place(&f)) {
                existing.tight.extend(f.tight);
            } else {
                kept.push(f);
            }
        }
        verts = kept;
    }
    verts.iter().map(Vertex::to_point).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    fn hs(u: &[i64], q: i64) -> Halfspace {
        Halfspace::new(Direction::from_ints(u).unwrap(), int(q))
    }

    #[test]
    fn interval_in_one_dimension() {
        let p = intersect_halfspaces(&[hs(&[1], 0), hs(&[-1], -1)], 1).unwrap();
        assert_eq!(p.vertices, vec![Point::from_ints(&[0]), Point::from_ints(&[1])]);
        assert!(!p.unbounded);
    }

    #[test]
    fn unit_square() {
        let sq = [hs(&[1, 0], 0), hs(&[-1, 0], -1), hs(&[0, 1], 0), hs(&[0, -1], -1)];
        let p = intersect_halfspaces(&sq, 2).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.affine_dim, Some(2));
        assert_eq!(p.barycenter().unwrap(), Point::new(vec![ratio(1, 2), ratio(1, 2)]));
    }

    #[test]
    fn unbounded_and_empty_are_flagged() {
        let p = intersect_halfspaces(&[hs(&[1, 0], 0), hs(&[0, 1], 0)], 2).unwrap();
        assert!(p.unbounded);
        assert_eq!(p.vertices, vec![Point::from_ints(&[0, 0])]);
        let e = intersect_halfspaces(&[hs(&[1, 0], 1), hs(&[-1, 0], 0)], 2).unwrap();
        assert!(e.is_empty());
        assert!(intersect_halfspaces(&[hs(&[1, 0, 0, 0], 1)], 4).is_err());
    }

    #[test]
    fn cube_and_degenerate_solid() {
        let mut cube = Vec::new();
        for k in 0..3 {
            let mut e = [0i64; 3];
            e[k] = 1;
            cube.push(hs(&e, 0));
            e[k] = -1;
            cube.push(hs(&e, -2));
        }
        let p = intersect_halfspaces(&cube, 3).unwrap();
        assert_eq!(p.vertices.len(), 8);
        assert_eq!(p.barycenter().unwrap(), Point::from_ints(&[1, 1, 1]));
        // Flatten onto z = 1.
        cube.push(hs(&[0, 0, 1], 1));
        cube.push(hs(&[0, 0, -1], -1));
        let flat = intersect_halfspaces(&cube, 3).unwrap();
        assert_eq!(flat.vertices.len(), 4);
        assert_eq!(flat.affine_dim, Some(2));
        assert_eq!(flat.barycenter().unwrap(), Point::from_ints(&[1, 1, 1]));
        // And onto the segment x = y = 1.
        cube.push(hs(&[1, 0, 0], 1));
        cube.push(hs(&[-1, 0, 0], -1));
        cube.push(hs(&[0, 1, 0], 1));
        cube.push(hs(&[0, -1, 0], -1));
        let pt = intersect_halfspaces(&cube, 3).unwrap();
        assert_eq!(pt.vertices, vec![Point::from_ints(&[1, 1, 1])]);
    }

    #[test]
    fn simplex_barycenter() {
        let simplex = [hs(&[1, 0, 0], 0), hs(&[0, 1, 0], 0), hs(&[0, 0, 1], 0), hs(&[-1, -1, -1], -4)];
        let p = intersect_halfspaces(&simplex, 3).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.barycenter().unwrap(), Point::from_ints(&[1, 1, 1]));
        let tri = [hs(&[1, 0], 0), hs(&[0, 1], 0), hs(&[-1, -1], -3)];
        let t = intersect_halfspaces(&tri, 2).unwrap();
        assert_eq!(t.barycenter().unwrap(), Point::from_ints(&[1, 1]));
    }

    #[test]
    fn truncated_cube_weights_by_volume() {
        let mut cut = Vec::new();
        for k in 0..3 {
            let mut e = [0i64; 3];
            e[k] = 1;
            cut.push(hs(&e, 0));
            e[k] = -1;
            cut.push(hs(&e, -2));
        }
        cut.push(hs(&[-1, -1, -1], -5));
        let p = intersect_halfspaces(&cut, 3).unwrap();
        assert_eq!(p.vertices.len(), 10);
        let c = ratio(185, 188);
        assert_eq!(p.barycenter().unwrap(), Point::new(vec![c.clone(), c.clone(), c]));
        assert_ne!(p.vertex_centroid(), p.barycenter());
    }
}
