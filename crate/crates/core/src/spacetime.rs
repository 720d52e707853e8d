//! The spacetime `R^1_1 x_T X`: events `(t, x)` over a spatial backend,
//! causal diamonds, maximal segments, staircase families of maximal curves
//! and localizing neighbourhoods.
//!
//! For `(t,x)` and `(s,y)`: chronological iff `s - t > d(x,y)`, causal iff
//! `s - t >= d(x,y)`, `tau = s - t - d(x,y)` on chronological pairs and 0
//! elsewhere, and `d_T = |s - t| + d(x,y)`.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::backends::{Backend, Metric, Point};
use crate::error::{domain, Result};
use crate::extended::ExtReal;
use crate::lorentz::{CausalInterpolation, CausalModel};
use crate::lorentz_hyperspace::{CanonicalOrder, EventSet};
use crate::metric_hyperspace::{curve_length_d, SampledCurve};
use crate::products::causal_curve_at;

#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub t: f64,
    pub x: Point,
}

impl Event {
    pub fn new(t: f64, x: impl Into<Point>) -> Self {
        Event { t, x: x.into() }
    }

    /// The same event as an element of the general taxicab product.
    pub fn to_pair(&self) -> (f64, Point) {
        (self.t, self.x.clone())
    }

    pub fn shifted(&self, dt: f64) -> Event {
        Event { t: self.t + dt, x: self.x.clone() }
    }
}

impl From<(f64, Point)> for Event {
    fn from((t, x): (f64, Point)) -> Self {
        Event { t, x }
    }
}

impl CanonicalOrder for Event {
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.t.total_cmp(&other.t).then_with(|| self.x.canonical_cmp(&other.x))
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, self.x)
    }
}

/// `J^+(bottom) ∩ J^-(top)` for causally related vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Diamond {
    bottom: Event,
    top: Event,
}

impl Diamond {
    pub fn bottom(&self) -> &Event {
        &self.bottom
    }

    pub fn top(&self) -> &Event {
        &self.top
    }

    /// Caller guarantees `bottom <= top`.
    pub(crate) fn from_vertices(bottom: Event, top: Event) -> Self {
        Diamond { bottom, top }
    }

    /// The degenerate diamond `J^+(e) ∩ J^-(e) = {e}`.
    pub fn point(e: Event) -> Self {
        Diamond { bottom: e.clone(), top: e }
    }

    /// Time extent `s - t`, which bounds every spatial offset inside.
    pub fn height(&self) -> f64 {
        self.top.t - self.bottom.t
    }
}

impl CanonicalOrder for Diamond {
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.bottom.canonical_cmp(&other.bottom).then_with(|| self.top.canonical_cmp(&other.top))
    }
}

impl fmt::Display for Diamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.bottom, self.top)
    }
}

/// `R^1_1 x_T X` over a fixed spatial backend.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spacetime {
    pub backend: Backend,
}

impl Spacetime {
    pub fn new(backend: Backend) -> Self {
        Spacetime { backend }
    }

    /// Builds an event, validating (and on the circle wrapping) its position.
    pub fn event(&self, t: f64, x: impl Into<Vec<f64>>) -> Result<Event> {
        if !t.is_finite() {
            return domain(format!("event time {t} is not finite"));
        }
        Ok(Event { t, x: self.backend.point(x)? })
    }

    pub fn check(&self, e: &Event) -> Result<()> {
        if !e.t.is_finite() {
            return domain(format!("event time {} is not finite", e.t));
        }
        self.backend.check(&e.x)
    }

    pub fn diamond(&self, bottom: Event, top: Event) -> Result<Diamond> {
        self.check(&bottom)?;
        self.check(&top)?;
        if !self.causal(&bottom, &top)? {
            return domain(format!("diamond vertices {bottom} and {top} are not causally related"));
        }
        Ok(Diamond { bottom, top })
    }

    /// `(s - t, d(x, y))`.
    fn gaps(&self, e1: &Event, e2: &Event) -> Result<(f64, f64)> {
        Ok((e2.t - e1.t, self.backend.dist(&e1.x, &e2.x)?))
    }

    /// The maximal curve from `e1` to `e2` sampled at `steps + 1` points.
    ///
    /// Timelike pairs use the tau-arclength parameter `u` in `[0, L]` with
    /// `L = tau(e1, e2)`, so `tau(l(u1), l(u2)) = u2 - u1`; null pairs use
    /// `u` in `[0, 1]`. Space follows the canonical geodesic at the same rate.
    pub fn maximal_segment(&self, e1: &Event, e2: &Event, steps: usize) -> Result<SampledCurve<Event>> {
        if !self.causal(e1, e2)? {
            return domain(format!("{e1} is not in the causal past of {e2}"));
        }
        if e1 == e2 {
            return domain("maximal segment between equal events");
        }
        if steps == 0 {
            return domain("maximal segment needs at least one step");
        }
        let l = self.tau(e1, e2)?.to_f64();
        let span = if l > 0.0 { l } else { 1.0 };
        let mut params = Vec::with_capacity(steps + 1);
        let mut points = Vec::with_capacity(steps + 1);
        for k in 0..=steps {
            let lambda = k as f64 / steps as f64;
            params.push(if k == steps { span } else { lambda * span });
            points.push(self.causal_interpolate(e1, e2, lambda)?);
        }
        SampledCurve::new(params, points)
    }

    /// A staircase from `e1` to `e2` along the canonical geodesic of `X`,
    /// through interior corners `(time, arclength)`.
    ///
    /// Every step must satisfy `dt >= dsigma >= 0` with `dt > 0`; the curve is
    /// parametrized by time. Its tau-sum telescopes to `tau(e1, e2)`.
    pub fn staircase(&self, e1: &Event, e2: &Event, corners: &[(f64, f64)]) -> Result<SampledCurve<Event>> {
        let (dt, d) = self.gaps(e1, e2)?;
        if !(dt >= d) {
            return domain(format!("{e1} is not in the causal past of {e2}"));
        }
        let mut path = Vec::with_capacity(corners.len() + 2);
        path.push((e1.t, 0.0));
        path.extend_from_slice(corners);
        path.push((e2.t, d));
        for w in path.windows(2) {
            let (step_t, step_s) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            if !(step_t > 0.0 && step_t >= step_s && step_s >= 0.0) {
                return domain(format!(
                    "staircase step {:?} -> {:?} violates dt >= dsigma >= 0 with dt > 0",
                    w[0], w[1]
                ));
            }
        }
        let last = path.len() - 1;
        let points = path
            .iter()
            .enumerate()
            .map(|(i, &(t, sigma))| match i {
                0 => Ok(e1.clone()),
                i if i == last => Ok(e2.clone()),
                _ => Ok(Event { t, x: self.backend.geodesic_point(&e1.x, &e2.x, sigma.min(d))? }),
            })
            .collect::<Result<Vec<_>>>()?;
        SampledCurve::new(path.iter().map(|p| p.0).collect(), points)
    }

    /// `k` pairwise distinct random staircases from `e1` to `e2`, each with
    /// tau-length `tau(e1, e2)`.
    ///
    /// Each staircase has one to four interior corners. Arclengths are
    /// `d * w_i` and times `t + d * w_i + (tau) * v_i` for independent sorted
    /// uniform samples `w` and `v`, so every step has `dt - dsigma = tau * dv > 0`.
    pub fn alt_maximal_curves(&self, e1: &Event, e2: &Event, k: usize, seed: u64) -> Result<Vec<SampledCurve<Event>>> {
        if !self.chron(e1, e2)? {
            return domain(format!("{e1} is not in the chronological past of {e2}"));
        }
        if k < 2 {
            return domain(format!("need at least two curves, got {k}"));
        }
        let (dt, d) = self.gaps(e1, e2)?;
        if d == 0.0 {
            return domain("events at the same position have a unique maximal curve");
        }
        let slack = dt - d;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<SampledCurve<Event>> = Vec::with_capacity(k);
        while out.len() < k {
            let m = rng.gen_range(1..=4);
            let mut w: Vec<f64> = (0..m).map(|_| rng.gen::<f64>()).collect();
            let mut v: Vec<f64> = (0..m).map(|_| rng.gen::<f64>()).collect();
            w.sort_by(f64::total_cmp);
            v.sort_by(f64::total_cmp);
            let corners: Vec<(f64, f64)> =
                w.iter().zip(&v).map(|(wi, vi)| (e1.t + d * wi + slack * vi, d * wi)).collect();
            let Ok(curve) = self.staircase(e1, e2, &corners) else {
                continue;
            };
            let mut distinct = true;
            for c in &out {
                if self.curve_separation(c, &curve)? == 0.0 {
                    distinct = false;
                    break;
                }
            }
            if distinct {
                out.push(curve);
            }
        }
        Ok(out)
    }

    /// `sup_u d_T(c1(u), c2(u))` for two causal curves on the same parameter
    /// interval, evaluated at the union of their samples. Exact when both
    /// curves are piecewise maximal segments along one spatial geodesic.
    pub fn curve_separation(&self, c1: &SampledCurve<Event>, c2: &SampledCurve<Event>) -> Result<f64> {
        let (p1, p2) = (c1.params(), c2.params());
        if p1[0] != p2[0] || p1[p1.len() - 1] != p2[p2.len() - 1] {
            return domain("curves are parametrized over different intervals");
        }
        let mut us: Vec<f64> = p1.iter().chain(p2).copied().collect();
        us.sort_by(f64::total_cmp);
        us.dedup();
        us.iter().try_fold(0.0f64, |m, &u| {
            let a = causal_curve_at(self, c1, u)?;
            let b = causal_curve_at(self, c2, u)?;
            Ok(m.max(self.dist(&a, &b)?))
        })
    }

    pub fn diamond_membership(&self, dm: &Diamond, e: &Event) -> Result<bool> {
        Ok(self.causal(&dm.bottom, e)? && self.causal(e, &dm.top)?)
    }

    /// Grid sample of a diamond at spacing `h` in time and space, always
    /// including both vertices, in canonical order.
    ///
    /// Times are `t + k h`; positions are `x + j h` per axis within the ball
    /// of radius `s - t` (on the circle, arc offsets up to half the circumference).
    pub fn diamond_sample(&self, dm: &Diamond, h: f64) -> Result<EventSet<Event>> {
        if !(h > 0.0 && h.is_finite()) {
            return domain(format!("grid spacing must be positive, got {h}"));
        }
        let height = dm.height();
        let slices = (height / h).floor() as usize;
        let offsets = self.spatial_offsets(height, h);
        let base = dm.bottom.x.coords();
        let mut events: Vec<Event> = (0..=slices)
            .into_par_iter()
            .map(|k| {
                let t = dm.bottom.t + k as f64 * h;
                let mut slice = Vec::new();
                for off in &offsets {
                    let coords: Vec<f64> = base.iter().zip(off).map(|(b, o)| b + o).collect();
                    let e = Event { t, x: self.backend.point(coords)? };
                    if self.diamond_membership(dm, &e)? {
                        slice.push(e);
                    }
                }
                Ok(slice)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        events.push(dm.bottom.clone());
        events.push(dm.top.clone());
        EventSet::new(events)
    }

    /// Lattice offsets `j h` with every component within `radius`.
    fn spatial_offsets(&self, radius: f64, h: f64) -> Vec<Vec<f64>> {
        let (dim, reach) = match self.backend {
            Backend::Circle(c) => (1, radius.min(c / 2.0)),
            b => (b.dim(), radius),
        };
        let j = (reach / h).floor() as i64;
        let axis: Vec<f64> = (-j..=j).map(|i| i as f64 * h).collect();
        let mut out = vec![Vec::with_capacity(dim)];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    axis.iter().map(move |&o| {
                        let mut p = prefix.clone();
                        p.push(o);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Membership in `Omega^r_(t,x) = I^+(t - r, x) ∩ I^-(t + r, x)`.
    pub fn localizing_membership(&self, center: &Event, r: f64, q: &Event) -> Result<bool> {
        if !(r > 0.0) {
            return domain(format!("localizing radius must be positive, got {r}"));
        }
        Ok(self.chron(&center.shifted(-r), q)? && self.chron(q, &center.shifted(r))?)
    }

    /// Whether a curve inside `Omega^r_center` has `L_{d_T} < 2r`.
    ///
    /// For causal curves this always holds; `false` signals a violation.
    pub fn check_imprisonment_bound(&self, center: &Event, r: f64, c: &SampledCurve<Event>) -> Result<bool> {
        for e in c.points() {
            if !self.localizing_membership(center, r, e)? {
                return domain(format!("sample {e} lies outside the localizing neighbourhood"));
            }
        }
        Ok(curve_length_d(self, c)? < 2.0 * r)
    }
}

impl Metric for Spacetime {
    type Element = Event;

    fn dist(&self, e1: &Event, e2: &Event) -> Result<f64> {
        let d = self.backend.dist(&e1.x, &e2.x)?;
        Ok((e2.t - e1.t).abs() + d)
    }
}

impl CausalModel for Spacetime {
    fn chron(&self, e1: &Event, e2: &Event) -> Result<bool> {
        let (dt, d) = self.gaps(e1, e2)?;
        Ok(dt > d)
    }

    fn causal(&self, e1: &Event, e2: &Event) -> Result<bool> {
        let (dt, d) = self.gaps(e1, e2)?;
        Ok(dt >= d)
    }

    fn tau(&self, e1: &Event, e2: &Event) -> Result<ExtReal> {
        let (dt, d) = self.gaps(e1, e2)?;
        Ok(ExtReal::Finite(if dt > d { dt - d } else { 0.0 }))
    }

    fn name(&self) -> String {
        format!("R^1_1 x_T {}", self.backend.name())
    }
}

impl CausalInterpolation for Spacetime {
    fn causal_interpolate(&self, e1: &Event, e2: &Event, lambda: f64) -> Result<Event> {
        let (dt, d) = self.gaps(e1, e2)?;
        if !(dt >= d) {
            return domain(format!("{e1} is not in the causal past of {e2}"));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return domain(format!("interpolation fraction {lambda} outside [0, 1]"));
        }
        if lambda == 1.0 {
            return Ok(e2.clone());
        }
        Ok(Event { t: e1.t + lambda * dt, x: self.backend.geodesic_point(&e1.x, &e2.x, lambda * d)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{classify_curve, curve_length_tau, CurveClass};

    fn st() -> Spacetime {
        Spacetime::new(Backend::Euclidean(2))
    }

    fn ev(t: f64, x: [f64; 2]) -> Event {
        Event::new(t, x)
    }

    #[test]
    fn closed_forms() {
        let s = st();
        let o = ev(0.0, [0.0, 0.0]);
        assert_eq!(s.tau(&o, &ev(7.0, [3.0, 4.0])).unwrap(), ExtReal::Finite(2.0));
        assert_eq!(s.dist(&o, &ev(7.0, [3.0, 4.0])).unwrap(), 12.0);
        let null = ev(5.0, [3.0, 4.0]);
        assert_eq!(s.tau(&o, &null).unwrap(), ExtReal::ZERO);
        assert!(s.causal(&o, &null).unwrap() && !s.chron(&o, &null).unwrap());
        assert!(s.chron(&null, &ev(11.0, [3.0, 5.0])).unwrap());
        assert!(s.chron(&o, &ev(11.0, [3.0, 5.0])).unwrap());
    }

    #[test]
    fn maximal_segment_formula() {
        let s = st();
        let c = s.maximal_segment(&ev(0.0, [0.0, 0.0]), &ev(7.0, [3.0, 4.0]), 4).unwrap();
        assert_eq!(c.params(), &[0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(c.points()[2], ev(3.5, [1.5, 2.0]));
        assert_eq!(curve_length_tau(&s, &c).unwrap(), ExtReal::Finite(2.0));
        assert_eq!(curve_length_d(&s, &c).unwrap(), 12.0);
        assert_eq!(classify_curve(&s, &c).unwrap(), CurveClass::Timelike);
    }

    #[test]
    fn null_maximal_segment() {
        let s = st();
        let c = s.maximal_segment(&ev(0.0, [0.0, 0.0]), &ev(5.0, [3.0, 4.0]), 2).unwrap();
        assert_eq!(c.params(), &[0.0, 0.5, 1.0]);
        assert_eq!(curve_length_tau(&s, &c).unwrap(), ExtReal::ZERO);
        assert_eq!(curve_length_d(&s, &c).unwrap(), 10.0);
    }

    #[test]
    fn maximal_segment_rejects_bad_pairs() {
        let s = st();
        let o = ev(0.0, [0.0, 0.0]);
        assert!(s.maximal_segment(&o, &ev(-1.0, [0.0, 0.0]), 4).is_err());
        assert!(s.maximal_segment(&o, &o, 4).is_err());
    }

    #[test]
    fn explicit_staircases() {
        let s = st();
        let (a, b) = (ev(0.0, [0.0, 0.0]), ev(7.0, [3.0, 4.0]));
        let wait_first = s.staircase(&a, &b, &[(2.0, 0.0)]).unwrap();
        assert_eq!(curve_length_tau(&s, &wait_first).unwrap(), ExtReal::Finite(2.0));
        let null_first = s.staircase(&a, &b, &[(5.0, 5.0)]).unwrap();
        assert_eq!(null_first.points()[1], ev(5.0, [3.0, 4.0]));
        assert_eq!(curve_length_tau(&s, &null_first).unwrap(), ExtReal::Finite(2.0));
        assert_eq!(s.curve_separation(&wait_first, &null_first).unwrap(), 2.0);
        assert!(s.staircase(&a, &b, &[(1.0, 2.0)]).is_err());
    }

    #[test]
    fn random_staircases_are_maximal_and_distinct() {
        let s = st();
        let (a, b) = (ev(0.0, [0.0, 0.0]), ev(7.0, [3.0, 4.0]));
        let cs = s.alt_maximal_curves(&a, &b, 5, 3).unwrap();
        assert_eq!(cs.len(), 5);
        for (i, c) in cs.iter().enumerate() {
            assert!((curve_length_tau(&s, c).unwrap().to_f64() - 2.0).abs() < 1e-9);
            assert!(matches!(classify_curve(&s, c).unwrap(), CurveClass::Timelike | CurveClass::Causal));
            for d in &cs[i + 1..] {
                assert!(s.curve_separation(c, d).unwrap() > 0.0);
            }
        }
        assert_eq!(cs, s.alt_maximal_curves(&a, &b, 5, 3).unwrap());
        assert!(s.alt_maximal_curves(&a, &ev(5.0, [3.0, 4.0]), 5, 3).is_err());
        assert!(s.alt_maximal_curves(&a, &b, 1, 3).is_err());
    }

    #[test]
    fn diamond_membership_examples() {
        let s = st();
        let d = s.diamond(ev(0.0, [0.0, 0.0]), ev(10.0, [0.0, 0.0])).unwrap();
        assert!(s.diamond_membership(&d, &ev(5.0, [2.0, 0.0])).unwrap());
        assert!(!s.diamond_membership(&d, &ev(5.0, [6.0, 0.0])).unwrap());
        assert!(s.diamond_membership(&d, d.bottom()).unwrap());
        assert!(s.diamond(ev(0.0, [0.0, 0.0]), ev(1.0, [3.0, 0.0])).is_err());
    }

    #[test]
    fn diamond_samples() {
        let s = Spacetime::new(Backend::Euclidean(1));
        let d = s.diamond(Event::new(0.0, [0.0]), Event::new(2.0, [0.0])).unwrap();
        let got: Vec<(f64, f64)> =
            s.diamond_sample(&d, 1.0).unwrap().elements().iter().map(|e| (e.t, e.x.coords()[0])).collect();
        assert_eq!(got, vec![(0.0, 0.0), (1.0, -1.0), (1.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        let p = Diamond::point(Event::new(3.0, [1.0]));
        assert_eq!(s.diamond_sample(&p, 0.1).unwrap().elements(), &[Event::new(3.0, [1.0])]);
        assert!(s.diamond_sample(&d, 0.0).is_err());
    }

    #[test]
    fn circle_diamond_sample_wraps() {
        let s = Spacetime::new(Backend::circle(4.0).unwrap());
        let d = s.diamond(s.event(0.0, [0.5]).unwrap(), s.event(4.0, [0.5]).unwrap()).unwrap();
        let sample = s.diamond_sample(&d, 1.0).unwrap();
        for e in sample.elements() {
            assert!(s.diamond_membership(&d, e).unwrap());
            assert!((0.0..4.0).contains(&e.x.coords()[0]));
        }
        // Slice t = 2 reaches every lattice position once.
        assert_eq!(sample.elements().iter().filter(|e| e.t == 2.0).count(), 4);
    }

    #[test]
    fn localizing_neighbourhoods() {
        let s = st();
        let c = ev(0.0, [0.0, 0.0]);
        assert!(s.localizing_membership(&c, 2.0, &c).unwrap());
        assert!(!s.localizing_membership(&c, 2.0, &ev(0.0, [2.0, 0.0])).unwrap());
        assert!(s.localizing_membership(&c, 2.0, &ev(1.5, [0.0, 0.0])).unwrap());
        assert!(s.localizing_membership(&c, 0.0, &c).is_err());
    }

    #[test]
    fn imprisonment_bound() {
        let s = st();
        let c = ev(0.0, [0.0, 0.0]);
        let curve = s.maximal_segment(&ev(-0.95, [0.0, 0.0]), &ev(0.95, [0.0, 0.0]), 8).unwrap();
        assert!(s.check_imprisonment_bound(&c, 1.0, &curve).unwrap());
        let seg = s.maximal_segment(&ev(-1.5, [0.1, 0.0]), &ev(1.5, [0.3, 0.2]), 8).unwrap();
        assert!(s.check_imprisonment_bound(&c, 2.0, &seg).unwrap());
        let outside = s.maximal_segment(&ev(-3.0, [0.0, 0.0]), &ev(0.0, [0.0, 0.0]), 2).unwrap();
        assert!(s.check_imprisonment_bound(&c, 1.0, &outside).is_err());
    }
}
