//! Compact sets of a backend: Hausdorff distance, closed tubular
//! neighborhoods, sampled curves and the hyperspace geodesic
//! `alpha(t) = U_t(A) ∩ U_{r-t}(B)`.
//!
//! Compact sets are finite point lists. Sets with infinitely many points
//! (tubular neighborhoods and their intersections) are [`Region`]s: a
//! membership predicate plus bounds, discretized on the lattice `h * Z^n`.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::backends::{Backend, Metric, Point, ARCLENGTH_SLACK};
use crate::error::{domain, structural, Error, Result};

/// Successive dyadic refinements closer than this are considered converged.
pub const DYADIC_TOLERANCE: f64 = 1e-7;

/// Nonempty, deduplicated finite set of backend points.
///
/// Points are kept in lexicographic order, so two sets are equal exactly
/// when they contain the same points.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSet {
    backend: Backend,
    points: Vec<Point>,
}

impl FiniteSet {
    pub fn new(backend: Backend, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return domain("finite sets must be nonempty");
        }
        for p in &points {
            backend.check(p)?;
        }
        let mut points = points;
        points.sort_by(lex_cmp);
        points.dedup();
        Ok(FiniteSet { backend, points })
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search_by(|q| lex_cmp(q, p)).is_ok()
    }

    fn same_backend(&self, other: &FiniteSet) -> Result<()> {
        if self.backend != other.backend {
            return structural(format!("sets over {} and {} cannot be compared", self.backend, other.backend));
        }
        Ok(())
    }
}

fn lex_cmp(a: &Point, b: &Point) -> Ordering {
    for (x, y) in a.coords().iter().zip(b.coords()) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.dim().cmp(&b.dim())
}

/// A curve known through samples at strictly increasing parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve<P> {
    params: Vec<f64>,
    points: Vec<P>,
}

impl<P> SampledCurve<P> {
    pub fn new(params: Vec<f64>, points: Vec<P>) -> Result<Self> {
        if params.len() != points.len() {
            return structural(format!("{} parameters for {} samples", params.len(), points.len()));
        }
        if params.len() < 2 {
            return domain("a sampled curve needs at least 2 samples");
        }
        if params.iter().any(|u| !u.is_finite()) {
            return domain("curve parameters must be finite");
        }
        if params.windows(2).any(|w| w[0] >= w[1]) {
            return domain("curve parameters must be strictly increasing");
        }
        Ok(SampledCurve { params, points })
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> &P {
        &self.points[0]
    }

    pub fn last(&self) -> &P {
        &self.points[self.points.len() - 1]
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, &P)> {
        self.params.iter().copied().zip(&self.points)
    }

    pub fn map_points<Q>(&self, f: impl FnMut(&P) -> Q) -> SampledCurve<Q> {
        SampledCurve { params: self.params.clone(), points: self.points.iter().map(f).collect() }
    }
}

/// Polygonal length `S(P)` of the curve over its own sample partition.
pub fn curve_length_d<M: Metric>(metric: &M, curve: &SampledCurve<M::Element>) -> Result<f64> {
    curve.points.windows(2).map(|w| metric.dist(&w[0], &w[1])).sum()
}

/// Result of [`refine_dyadic`].
#[derive(Debug, Clone)]
pub struct Refinement<P> {
    pub curve: SampledCurve<P>,
    pub length: f64,
    pub intervals: usize,
    pub converged: bool,
}

/// Samples `eval` on `[a, b]` with 1, 2, 4, ... equal intervals until two
/// successive lengths differ by less than `tol`, or `max_levels` doublings.
pub fn refine_dyadic<P, F, L>(eval: F, a: f64, b: f64, length: L, tol: f64, max_levels: usize) -> Result<Refinement<P>>
where
    F: Fn(f64) -> Result<P>,
    L: Fn(&SampledCurve<P>) -> Result<f64>,
{
    if !(a < b) {
        return domain(format!("refinement interval [{a}, {b}] is empty"));
    }
    let sample = |n: usize| -> Result<SampledCurve<P>> {
        let params: Vec<f64> = (0..=n).map(|k| if k == n { b } else { a + (b - a) * k as f64 / n as f64 }).collect();
        let points = params.iter().map(|&u| eval(u)).collect::<Result<Vec<_>>>()?;
        SampledCurve::new(params, points)
    };
    let mut intervals = 1;
    let mut curve = sample(intervals)?;
    let mut len = length(&curve)?;
    for _ in 0..max_levels {
        let next_curve = sample(intervals * 2)?;
        let next_len = length(&next_curve)?;
        intervals *= 2;
        let done = (next_len - len).abs() < tol;
        curve = next_curve;
        len = next_len;
        if done {
            return Ok(Refinement { curve, length: len, intervals, converged: true });
        }
    }
    Ok(Refinement { curve, length: len, intervals, converged: false })
}

/// `inf { d(p, a) : a in set }` for any metric.
pub fn dist_to_slice<M: Metric>(metric: &M, p: &M::Element, set: &[M::Element]) -> Result<f64> {
    let mut best = f64::INFINITY;
    for q in set {
        best = best.min(metric.dist(p, q)?);
    }
    Ok(best)
}

/// Deterministic visiting order that scatters neighbouring indices.
pub(crate) fn scattered_order(n: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    // Fixed xorshift sequence; the permutation only affects speed, never results.
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    for i in (1..n).rev() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let j = (state % (i as u64 + 1)) as usize;
        idx.swap(i, j);
    }
    idx
}

/// `sup_{a in A} dist(a, B)`, exact.
///
/// Inner scans stop as soon as a point of `B` closer than the running
/// maximum is found, since such an `a` cannot raise the supremum.
pub fn directed_hausdorff<M: Metric>(metric: &M, a: &[M::Element], b: &[M::Element]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return domain("Hausdorff distance needs nonempty sets");
    }
    let order_a = scattered_order(a.len());
    let order_b = scattered_order(b.len());
    let mut cmax: f64 = 0.0;
    for &i in &order_a {
        let mut cmin = f64::INFINITY;
        let mut dominated = false;
        for &j in &order_b {
            let d = metric.dist(&a[i], &b[j])?;
            if d < cmax {
                dominated = true;
                break;
            }
            cmin = cmin.min(d);
        }
        if !dominated && cmin > cmax {
            cmax = cmin;
        }
    }
    Ok(cmax)
}

/// Hausdorff distance between two finite slices under any metric.
pub fn hausdorff_by<M: Metric>(metric: &M, a: &[M::Element], b: &[M::Element]) -> Result<f64> {
    Ok(directed_hausdorff(metric, a, b)?.max(directed_hausdorff(metric, b, a)?))
}

pub fn dist_point_set(p: &Point, set: &FiniteSet) -> Result<f64> {
    dist_to_slice(&set.backend, p, &set.points)
}

pub fn hausdorff(a: &FiniteSet, b: &FiniteSet) -> Result<f64> {
    a.same_backend(b)?;
    hausdorff_by(&a.backend, &a.points, &b.points)
}

/// Membership in the closed neighborhood `{p : dist(p, A) <= r}`.
pub fn tubular_membership(set: &FiniteSet, r: f64, p: &Point) -> Result<bool> {
    if !(r >= 0.0) {
        return domain(format!("tubular radius must be nonnegative, got {r}"));
    }
    Ok(dist_point_set(p, set)? <= r)
}

/// Axis-aligned bounds of a region.
#[derive(Debug, Clone, PartialEq)]
pub enum Bounds {
    Box {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    /// The whole circle `[0, C)`.
    Circle(f64),
}

impl Bounds {
    fn intersect(&self, other: &Bounds) -> Bounds {
        match (self, other) {
            (Bounds::Box { lo: l1, hi: h1 }, Bounds::Box { lo: l2, hi: h2 }) => Bounds::Box {
                lo: l1.iter().zip(l2).map(|(a, b)| a.max(*b)).collect(),
                hi: h1.iter().zip(h2).map(|(a, b)| a.min(*b)).collect(),
            },
            (Bounds::Circle(c), _) | (_, Bounds::Circle(c)) => Bounds::Circle(*c),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            Bounds::Box { lo, hi } => p.coords().iter().zip(lo.iter().zip(hi)).all(|(x, (l, h))| l <= x && x <= h),
            Bounds::Circle(c) => p.coords().first().is_some_and(|x| (0.0..*c).contains(x)),
        }
    }
}

fn inflated_box(backend: Backend, points: &[Point], r: f64) -> Bounds {
    match backend {
        Backend::Circle(c) => Bounds::Circle(c),
        _ => {
            let n = backend.dim();
            let mut lo = vec![f64::INFINITY; n];
            let mut hi = vec![f64::NEG_INFINITY; n];
            for p in points {
                for (i, x) in p.coords().iter().enumerate() {
                    lo[i] = lo[i].min(x - r);
                    hi[i] = hi[i].max(x + r);
                }
            }
            Bounds::Box { lo, hi }
        }
    }
}

#[derive(Debug, Clone)]
enum Shape {
    Ball { center: Point, radius: f64 },
    Tubular { set: FiniteSet, radius: f64 },
    Intersection(Vec<Region>),
}

/// A subset of a backend given by a membership predicate.
#[derive(Debug, Clone)]
pub struct Region {
    backend: Backend,
    shape: Shape,
}

impl Region {
    /// Closed ball.
    pub fn ball(backend: Backend, center: Point, radius: f64) -> Result<Self> {
        backend.check(&center)?;
        if !(radius >= 0.0) {
            return domain(format!("ball radius must be nonnegative, got {radius}"));
        }
        Ok(Region { backend, shape: Shape::Ball { center, radius } })
    }

    /// Closed tubular neighborhood `U_r(A)`.
    pub fn tubular(set: FiniteSet, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) {
            return domain(format!("tubular radius must be nonnegative, got {radius}"));
        }
        Ok(Region { backend: set.backend(), shape: Shape::Tubular { set, radius } })
    }

    pub fn intersection(parts: Vec<Region>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return domain("intersection of no regions");
        };
        let backend = first.backend;
        if parts.iter().any(|r| r.backend != backend) {
            return structural("regions over different backends");
        }
        Ok(Region { backend, shape: Shape::Intersection(parts) })
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        self.backend.check(p)?;
        Ok(self.contains_unchecked(p))
    }

    fn contains_unchecked(&self, p: &Point) -> bool {
        match &self.shape {
            Shape::Ball { center, radius } => self.backend.dist_unchecked(center, p) <= *radius,
            Shape::Tubular { set, radius } => set.points().iter().any(|q| self.backend.dist_unchecked(q, p) <= *radius),
            Shape::Intersection(parts) => parts.iter().all(|r| r.contains_unchecked(p)),
        }
    }

    /// Bounds containing every member.
    pub fn bounds(&self) -> Bounds {
        match &self.shape {
            Shape::Ball { center, radius } => inflated_box(self.backend, std::slice::from_ref(center), *radius),
            Shape::Tubular { set, radius } => inflated_box(self.backend, set.points(), *radius),
            Shape::Intersection(parts) => {
                let mut it = parts.iter().map(Region::bounds);
                let first = it.next().expect("intersections are nonempty");
                it.fold(first, |acc, b| acc.intersect(&b))
            }
        }
    }

    /// Members of the lattice `h * Z^n` (arc positions `k h` on the circle),
    /// in lexicographic order.
    pub fn grid_sample(&self, h: f64) -> Result<Vec<Point>> {
        if !(h > 0.0 && h.is_finite()) {
            return domain(format!("grid spacing must be positive, got {h}"));
        }
        let candidates: Vec<Vec<f64>> = match self.bounds() {
            Bounds::Circle(c) => {
                let n = (c / h).ceil() as usize;
                return Ok((0..n)
                    .into_par_iter()
                    .map(|k| k as f64 * h)
                    .filter(|&x| x < c)
                    .map(|x| Point::new(vec![x]))
                    .filter(|p| self.contains_unchecked(p))
                    .collect());
            }
            Bounds::Box { lo, hi } => lo
                .iter()
                .zip(&hi)
                .map(|(l, u)| {
                    let k_lo = (l / h).ceil() as i64;
                    let k_hi = (u / h).floor() as i64;
                    (k_lo..=k_hi).map(|k| k as f64 * h).collect()
                })
                .collect(),
        };
        if candidates.iter().any(|axis| axis.is_empty()) {
            return Ok(Vec::new());
        }
        let total: usize = candidates.iter().map(Vec::len).product();
        Ok((0..total)
            .into_par_iter()
            .map(|mut idx| {
                let mut coords = vec![0.0; candidates.len()];
                for (i, axis) in candidates.iter().enumerate().rev() {
                    coords[i] = axis[idx % axis.len()];
                    idx /= axis.len();
                }
                Point::new(coords)
            })
            .filter(|p| self.contains_unchecked(p))
            .collect())
    }
}

/// Grid representative of `alpha(t) = U_t(A) ∩ U_{r-t}(B)`, `r = d_H(A, B)`.
///
/// Returns `A` at `t = 0` and `B` at `t = r`. Otherwise the lattice points of
/// the intersection are joined by exact witnesses: for each `a in A` the
/// point at arclength `t` towards its nearest `b` (or `b` itself), the
/// symmetric points for each `b in B`, and for every pair with
/// `d(a, b) <= r` the point at fraction `t / r` of their geodesic. The
/// witnesses keep the result nonempty for any `h`.
pub fn hyperspace_geodesic(a: &FiniteSet, b: &FiniteSet, t: f64, h: f64) -> Result<FiniteSet> {
    a.same_backend(b)?;
    let backend = a.backend();
    let r = hausdorff(a, b)?;
    if r == 0.0 {
        return Err(Error::Degenerate("the sets coincide (d_H = 0)".into()));
    }
    if !(t >= -ARCLENGTH_SLACK && t <= r + ARCLENGTH_SLACK) {
        return domain(format!("t = {t} outside [0, {r}]"));
    }
    if !(h > 0.0 && h.is_finite()) {
        return domain(format!("grid spacing must be positive, got {h}"));
    }
    if t <= 0.0 {
        return Ok(a.clone());
    }
    if t >= r {
        return Ok(b.clone());
    }
    let region = Region::intersection(vec![Region::tubular(a.clone(), t)?, Region::tubular(b.clone(), r - t)?])?;
    let mut points = region.grid_sample(h)?;

    let nearest = |p: &Point, set: &FiniteSet| -> (Point, f64) {
        set.points()
            .iter()
            .map(|q| (q, backend.dist_unchecked(p, q)))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .map(|(q, d)| (q.clone(), d))
            .expect("sets are nonempty")
    };
    for p in a.points() {
        let (q, d) = nearest(p, b);
        points.push(if d <= t { q.clone() } else { backend.geodesic_point(p, &q, t)? });
    }
    for q in b.points() {
        let (p, d) = nearest(q, a);
        points.push(if d <= r - t { p.clone() } else { backend.geodesic_point(q, &p, r - t)? });
    }
    for p in a.points() {
        for q in b.points() {
            let d = backend.dist_unchecked(p, q);
            if d <= r {
                points.push(backend.geodesic_point(p, q, d * t / r)?);
            }
        }
    }
    FiniteSet::new(backend, points)
}
