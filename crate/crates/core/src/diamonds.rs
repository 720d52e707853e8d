//! The hyperspace of causal diamonds of `R^1_1 x_T X` in closed form.
//!
//! For `D1 = (t1,x1) -> (s1,y1)` and `D2 = (t2,x2) -> (s2,y2)`:
//! `D1 <=_H D2` iff the bottoms and the tops are causally related,
//! `d_H = max{|t2-t1| + d(x1,x2), |s2-s1| + d(y1,y2)}` and, on causal pairs,
//! `tau_H = min{t2-t1-d(x1,x2), s2-s1-d(y1,y2)}`. Equivalently the vertex map
//! `D -> (bottom, top)` is an isometry into the uniform product of two copies
//! of the spacetime that preserves tau.

use crate::backends::{Backend, Metric};
use crate::error::{domain, Error, Result};
use crate::extended::ExtReal;
use crate::lorentz::{CausalModel, MinkowskiLine};
use crate::lorentz_hyperspace::{tau_h, EventSet};
use crate::products::UniformProduct;
use crate::spacetime::{Diamond, Event, Spacetime};

/// The uniform product receiving the vertex embedding.
pub type VertexSpace = UniformProduct<Spacetime, Spacetime>;

/// Diamonds of a spacetime, with the closed-form Hausdorff distance, causal
/// order and time separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiamondSpace {
    pub spacetime: Spacetime,
}

impl DiamondSpace {
    pub fn new(backend: Backend) -> Self {
        DiamondSpace { spacetime: Spacetime::new(backend) }
    }

    pub fn vertex_space(&self) -> VertexSpace {
        UniformProduct::new(self.spacetime, self.spacetime)
    }

    /// `f(D) = (bottom, top)`.
    pub fn embed(&self, d: &Diamond) -> (Event, Event) {
        (d.bottom().clone(), d.top().clone())
    }

    pub fn causal_h(&self, d1: &Diamond, d2: &Diamond) -> Result<bool> {
        let st = &self.spacetime;
        Ok(st.causal(d1.bottom(), d2.bottom())? && st.causal(d1.top(), d2.top())?)
    }

    pub fn hausdorff(&self, d1: &Diamond, d2: &Diamond) -> Result<f64> {
        let st = &self.spacetime;
        Ok(st.dist(d1.bottom(), d2.bottom())?.max(st.dist(d1.top(), d2.top())?))
    }

    pub fn tau_h(&self, d1: &Diamond, d2: &Diamond) -> Result<f64> {
        if !self.causal_h(d1, d2)? {
            return Ok(0.0);
        }
        let st = &self.spacetime;
        let bottom = st.tau(d1.bottom(), d2.bottom())?.to_f64();
        let top = st.tau(d1.top(), d2.top())?.to_f64();
        Ok(bottom.min(top))
    }

    /// `U_r(D) = J^+(t - r, x) ∩ J^-(s + r, y)`.
    pub fn tubular(&self, d: &Diamond, r: f64) -> Result<Diamond> {
        if !(r >= 0.0) {
            return domain(format!("tubular radius must be nonnegative, got {r}"));
        }
        self.spacetime.diamond(d.bottom().shifted(-r), d.top().shifted(r))
    }

    /// `gamma(u) = J^+(t2 + u - r, x2) ∩ J^-(s1 + u, y1)` with `r = d_H(D1, D2)`.
    ///
    /// `tau_H(gamma(u), gamma(v)) = v - u` for `u <= v`. The endpoints need not
    /// coincide with `D1` and `D2`; see [`DiamondSpace::causal_geodesic_endpoint_gap`].
    pub fn causal_geodesic(&self, d1: &Diamond, d2: &Diamond, u: f64) -> Result<Diamond> {
        let r = self.geodesic_span(d1, d2)?;
        if !self.causal_h(d1, d2)? {
            return domain("causal geodesic between diamonds that are not causally related");
        }
        if !(0.0..=r).contains(&u) {
            return domain(format!("geodesic parameter {u} outside [0, {r}]"));
        }
        // bottom <= top: s1 - t2 + r >= s1 - t1 + d(x1,x2) >= d(x1,y1) + d(x1,x2) >= d(x2,y1).
        Ok(Diamond::from_vertices(
            Event { t: d2.bottom().t + u - r, x: d2.bottom().x.clone() },
            Event { t: d1.top().t + u, x: d1.top().x.clone() },
        ))
    }

    /// `(d_H(gamma(0), D1), d_H(gamma(r), D2))` for the causal geodesic.
    pub fn causal_geodesic_endpoint_gap(&self, d1: &Diamond, d2: &Diamond) -> Result<(f64, f64)> {
        let r = self.geodesic_span(d1, d2)?;
        let start = self.causal_geodesic(d1, d2, 0.0)?;
        let end = self.causal_geodesic(d1, d2, r)?;
        Ok((self.hausdorff(&start, d1)?, self.hausdorff(&end, d2)?))
    }

    /// Metric geodesic for `d_H`: both vertices move along affine paths
    /// (canonical arcs on the circle) at rates making
    /// `d_H(D1, D(t)) = t` and `d_H(D(t), D2) = r - t`.
    ///
    /// On vector backends convexity of the norm keeps the vertices causally
    /// related. On the circle that can fail, which is a domain error.
    pub fn interpolate(&self, d1: &Diamond, d2: &Diamond, t: f64) -> Result<Diamond> {
        let r = self.geodesic_span(d1, d2)?;
        if !(0.0..=r).contains(&t) {
            return domain(format!("geodesic parameter {t} outside [0, {r}]"));
        }
        if t == 0.0 {
            return Ok(d1.clone());
        }
        if t == r {
            return Ok(d2.clone());
        }
        let lambda = t / r;
        let b = self.spacetime.backend;
        let lerp = |e1: &Event, e2: &Event| -> Result<Event> {
            Ok(Event { t: e1.t + lambda * (e2.t - e1.t), x: b.interpolate(&e1.x, &e2.x, lambda)? })
        };
        let bottom = lerp(d1.bottom(), d2.bottom())?;
        let top = lerp(d1.top(), d2.top())?;
        match b {
            Backend::Circle(_) => self.spacetime.diamond(bottom, top),
            _ => Ok(Diamond::from_vertices(bottom, top)),
        }
    }

    fn geodesic_span(&self, d1: &Diamond, d2: &Diamond) -> Result<f64> {
        let r = self.hausdorff(d1, d2)?;
        if r == 0.0 {
            return Err(Error::Degenerate("geodesic between equal diamonds".into()));
        }
        Ok(r)
    }
}

impl Metric for DiamondSpace {
    type Element = Diamond;

    fn dist(&self, a: &Diamond, b: &Diamond) -> Result<f64> {
        self.hausdorff(a, b)
    }
}

impl CausalModel for DiamondSpace {
    fn chron(&self, a: &Diamond, b: &Diamond) -> Result<bool> {
        let st = &self.spacetime;
        Ok(st.chron(a.bottom(), b.bottom())? && st.chron(a.top(), b.top())?)
    }

    fn causal(&self, a: &Diamond, b: &Diamond) -> Result<bool> {
        self.causal_h(a, b)
    }

    fn tau(&self, a: &Diamond, b: &Diamond) -> Result<ExtReal> {
        Ok(ExtReal::Finite(self.tau_h(a, b)?))
    }

    fn name(&self) -> String {
        format!("D({})", self.spacetime.name())
    }
}

/// A closed interval `[x - t, x + t]` of the line, stored as `(x, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub center: f64,
    pub radius: f64,
}

impl Interval {
    pub fn new(center: f64, radius: f64) -> Result<Self> {
        if !(center.is_finite() && radius.is_finite() && radius >= 0.0) {
            return domain(format!("invalid interval center {center}, radius {radius}"));
        }
        Ok(Interval { center, radius })
    }

    pub fn from_endpoints(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) {
            return domain(format!("interval [{lo}, {hi}] is empty"));
        }
        Interval::new((lo + hi) / 2.0, (hi - lo) / 2.0)
    }

    pub fn lo(&self) -> f64 {
        self.center - self.radius
    }

    pub fn hi(&self) -> f64 {
        self.center + self.radius
    }

    /// The interval as the diamond `J^+(lo) ∩ J^-(hi)` of the line, seen as
    /// the spacetime over a single spatial point.
    pub fn to_diamond(&self) -> Diamond {
        Diamond::from_vertices(Event::new(self.lo(), [0.0; 0]), Event::new(self.hi(), [0.0; 0]))
    }

    pub fn endpoints(&self) -> EventSet<f64> {
        EventSet::new(vec![self.lo(), self.hi()]).expect("two endpoints")
    }
}

/// `tau_H([x-t, x+t], [y-s, y+s]) = y - x - |t - s|` on causally related
/// intervals (`x <= y`, `y - x >= |t - s|`), 0 otherwise.
pub fn interval_tau_h(i1: &Interval, i2: &Interval) -> f64 {
    let gap = i2.center - i1.center;
    let spread = (i1.radius - i2.radius).abs();
    if gap >= 0.0 && gap >= spread {
        gap - spread
    } else {
        0.0
    }
}

/// `tau_H` of the endpoint sets in the line; agrees with [`interval_tau_h`].
pub fn interval_tau_h_by_endpoints(i1: &Interval, i2: &Interval) -> Result<f64> {
    Ok(tau_h(&MinkowskiLine, &i1.endpoints(), &i2.endpoints())?.to_f64())
}
