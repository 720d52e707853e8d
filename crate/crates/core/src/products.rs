//! Lorentzian taxicab products `Y x_T X` and uniform products `X x_inf Y`.

use std::fmt::Debug;

use crate::backends::{Backend, Metric, Point};
use crate::error::{domain, Result};
use crate::extended::ExtReal;
use crate::lorentz::{classify_curve, CausalInterpolation, CausalModel};
use crate::metric_hyperspace::SampledCurve;

/// `Y x_T X` for a causal factor `Y` and a spatial backend `X`.
///
/// `(a,b) << (p,q)` iff `tau_Y(a,p) > d_X(b,q)`; `(a,b) <= (p,q)` iff
/// `tau_Y(a,p) >= d_X(b,q)` and `a <=_Y p`; `tau_T = tau_Y - d_X` on
/// chronological pairs and 0 elsewhere; `d_T = d_Y + d_X`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaxicabProduct<Y> {
    pub time: Y,
    pub space: Backend,
}

impl<Y> TaxicabProduct<Y> {
    pub fn new(time: Y, space: Backend) -> Self {
        TaxicabProduct { time, space }
    }
}

impl<Y> Metric for TaxicabProduct<Y>
where
    Y: CausalModel,
    Y::Element: Clone + Debug + PartialEq,
{
    type Element = (Y::Element, Point);

    fn dist(&self, (a, b): &Self::Element, (p, q): &Self::Element) -> Result<f64> {
        let dy = self.time.dist(a, p)?;
        let dx = self.space.dist(b, q)?;
        Ok(dy + dx)
    }
}

impl<Y> CausalModel for TaxicabProduct<Y>
where
    Y: CausalModel,
    Y::Element: Clone + Debug + PartialEq,
{
    fn chron(&self, (a, b): &Self::Element, (p, q): &Self::Element) -> Result<bool> {
        let dx = self.space.dist(b, q)?;
        Ok(self.time.tau(a, p)?.gt_real(dx))
    }

    fn causal(&self, (a, b): &Self::Element, (p, q): &Self::Element) -> Result<bool> {
        let dx = self.space.dist(b, q)?;
        Ok(self.time.tau(a, p)?.ge_real(dx) && self.time.causal(a, p)?)
    }

    fn tau(&self, x: &Self::Element, y: &Self::Element) -> Result<ExtReal> {
        if !self.chron(x, y)? {
            return Ok(ExtReal::ZERO);
        }
        let dx = self.space.dist(&x.1, &y.1)?;
        Ok(self.time.tau(&x.0, &y.0)? - dx)
    }

    fn name(&self) -> String {
        format!("({}) x_T {}", self.time.name(), self.space.name())
    }
}

/// Walks the time factor's maximal curve and the canonical spatial geodesic
/// at the same rate, so tau grows linearly in `lambda`.
impl<Y> CausalInterpolation for TaxicabProduct<Y>
where
    Y: CausalInterpolation,
    Y::Element: Clone + Debug + PartialEq,
{
    fn causal_interpolate(&self, x: &Self::Element, y: &Self::Element, lambda: f64) -> Result<Self::Element> {
        if !self.causal(x, y)? {
            return domain("interpolation endpoints are not causally related");
        }
        if !(0.0..=1.0).contains(&lambda) {
            return domain(format!("interpolation fraction {lambda} outside [0, 1]"));
        }
        let a = self.time.causal_interpolate(&x.0, &y.0, lambda)?;
        let d = self.space.dist(&x.1, &y.1)?;
        let b = self.space.geodesic_point(&x.1, &y.1, (lambda * d).min(d))?;
        Ok((a, b))
    }
}

/// `X x_inf Y`: componentwise relations, `tau = min`, `d = max`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformProduct<X, Y> {
    pub first: X,
    pub second: Y,
}

impl<X, Y> UniformProduct<X, Y> {
    pub fn new(first: X, second: Y) -> Self {
        UniformProduct { first, second }
    }
}

impl<X, Y> Metric for UniformProduct<X, Y>
where
    X: Metric,
    Y: Metric,
{
    type Element = (X::Element, Y::Element);

    fn dist(&self, (x, y): &Self::Element, (a, b): &Self::Element) -> Result<f64> {
        Ok(self.first.dist(x, a)?.max(self.second.dist(y, b)?))
    }
}

impl<X, Y> CausalModel for UniformProduct<X, Y>
where
    X: CausalModel,
    Y: CausalModel,
    X::Element: Clone + Debug + PartialEq,
    Y::Element: Clone + Debug + PartialEq,
{
    fn chron(&self, (x, y): &Self::Element, (a, b): &Self::Element) -> Result<bool> {
        Ok(self.first.chron(x, a)? && self.second.chron(y, b)?)
    }

    fn causal(&self, (x, y): &Self::Element, (a, b): &Self::Element) -> Result<bool> {
        Ok(self.first.causal(x, a)? && self.second.causal(y, b)?)
    }

    fn tau(&self, (x, y): &Self::Element, (a, b): &Self::Element) -> Result<ExtReal> {
        if !(self.first.causal(x, a)? && self.second.causal(y, b)?) {
            return Ok(ExtReal::ZERO);
        }
        Ok(self.first.tau(x, a)?.min(self.second.tau(y, b)?))
    }

    fn name(&self) -> String {
        format!("({}) x_inf ({})", self.first.name(), self.second.name())
    }
}

impl<X, Y> CausalInterpolation for UniformProduct<X, Y>
where
    X: CausalInterpolation,
    Y: CausalInterpolation,
    X::Element: Clone + Debug + PartialEq,
    Y::Element: Clone + Debug + PartialEq,
{
    fn causal_interpolate(&self, (x, y): &Self::Element, (a, b): &Self::Element, lambda: f64) -> Result<Self::Element> {
        Ok((self.first.causal_interpolate(x, a, lambda)?, self.second.causal_interpolate(y, b, lambda)?))
    }
}

/// The point of a sampled causal curve at parameter `u`, following the
/// model's maximal curve between the two bracketing samples.
pub fn causal_curve_at<M>(model: &M, curve: &SampledCurve<M::Element>, u: f64) -> Result<M::Element>
where
    M: CausalInterpolation,
    M::Element: Clone + Debug + PartialEq,
{
    let params = curve.params();
    let (lo, hi) = (params[0], params[params.len() - 1]);
    if !(lo..=hi).contains(&u) {
        return domain(format!("parameter {u} outside [{lo}, {hi}]"));
    }
    // First index with params[i] >= u.
    let i = params.partition_point(|&p| p < u);
    if params[i] == u {
        return Ok(curve.points()[i].clone());
    }
    let lambda = ((u - params[i - 1]) / (params[i] - params[i - 1])).clamp(0.0, 1.0);
    model.causal_interpolate(&curve.points()[i - 1], &curve.points()[i], lambda)
}

/// Relative tolerance under which an input breakpoint counts as already on
/// the uniform grid.
const GRID_MERGE: f64 = 1e-12;

/// Combines a causal curve in each factor into a causal curve of `X x_inf Y`
/// on `[0, 1]`, reparametrizing each factor affinely onto `[0, 1]`.
///
/// Samples are the uniform grid `k / steps` plus the images of the input
/// breakpoints, so the combined tau-sum never straddles a factor's corner.
/// `steps` defaults to the larger input sample count minus one.
pub fn combine_causal_curves<X, Y>(
    product: &UniformProduct<X, Y>,
    c1: &SampledCurve<X::Element>,
    c2: &SampledCurve<Y::Element>,
    steps: Option<usize>,
) -> Result<SampledCurve<(X::Element, Y::Element)>>
where
    X: CausalInterpolation,
    Y: CausalInterpolation,
    X::Element: Clone + Debug + PartialEq,
    Y::Element: Clone + Debug + PartialEq,
{
    if !classify_curve(&product.first, c1)?.is_causal() {
        return domain("first factor curve is not causal");
    }
    if !classify_curve(&product.second, c2)?.is_causal() {
        return domain("second factor curve is not causal");
    }
    let steps = steps.unwrap_or(c1.len().max(c2.len()) - 1);
    if steps == 0 {
        return domain("combined curve needs at least one step");
    }

    let normalized = |params: &[f64]| -> Vec<f64> {
        let (a, b) = (params[0], params[params.len() - 1]);
        params.iter().map(|p| (p - a) / (b - a)).collect()
    };
    let mut grid: Vec<f64> = (0..=steps).map(|k| k as f64 / steps as f64).collect();
    grid.extend(normalized(c1.params()));
    grid.extend(normalized(c2.params()));
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() <= GRID_MERGE);
    // Keep the endpoints exact after merging.
    grid[0] = 0.0;
    *grid.last_mut().expect("grid is nonempty") = 1.0;

    let phi = |c_params: &[f64], u: f64| {
        let (a, b) = (c_params[0], c_params[c_params.len() - 1]);
        if u >= 1.0 {
            b
        } else {
            (a + u * (b - a)).min(b)
        }
    };
    let points = grid
        .iter()
        .map(|&u| {
            Ok((
                causal_curve_at(&product.first, c1, phi(c1.params(), u))?,
                causal_curve_at(&product.second, c2, phi(c2.params(), u))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    SampledCurve::new(grid, points)
}

/// Projects a curve in `X x_inf Y` onto its factors.
pub fn project_curve<A: Clone, B: Clone>(curve: &SampledCurve<(A, B)>) -> (SampledCurve<A>, SampledCurve<B>) {
    (curve.map_points(|p| p.0.clone()), curve.map_points(|p| p.1.clone()))
}
