//! Lorentzian pre-length spaces: the [`CausalModel`] contract, the line
//! `R^1_1`, causal character of sampled curves and their tau-length.

use std::fmt::Debug;

use crate::backends::Metric;
use crate::error::{domain, Result};
use crate::extended::ExtReal;
use crate::metric_hyperspace::SampledCurve;

/// A metric space with chronological and causal relations and a time separation.
///
/// Implementations are expected to satisfy: `causal` is a pre-order,
/// `chron` is transitive and contained in `causal`, `tau > 0` exactly on
/// chronological pairs, `tau = 0` off the causal relation, and the reverse
/// triangle inequality along causal chains. [`crate::audit`] checks all of
/// these on samples.
pub trait CausalModel: Metric
where
    Self::Element: Clone + Debug + PartialEq,
{
    fn chron(&self, a: &Self::Element, b: &Self::Element) -> Result<bool>;

    fn causal(&self, a: &Self::Element, b: &Self::Element) -> Result<bool>;

    fn tau(&self, a: &Self::Element, b: &Self::Element) -> Result<ExtReal>;

    fn name(&self) -> String;

    /// `q ∈ I^+(base)`
    fn in_chron_future(&self, base: &Self::Element, q: &Self::Element) -> Result<bool> {
        self.chron(base, q)
    }

    /// `q ∈ J^+(base)`
    fn in_causal_future(&self, base: &Self::Element, q: &Self::Element) -> Result<bool> {
        self.causal(base, q)
    }

    /// `q ∈ I^-(base)`
    fn in_chron_past(&self, base: &Self::Element, q: &Self::Element) -> Result<bool> {
        self.chron(q, base)
    }

    /// `q ∈ J^-(base)`
    fn in_causal_past(&self, base: &Self::Element, q: &Self::Element) -> Result<bool> {
        self.causal(q, base)
    }
}

/// Models that can walk along a maximal causal curve between causally related points.
pub trait CausalInterpolation: CausalModel
where
    Self::Element: Clone + Debug + PartialEq,
{
    /// The point at fraction `lambda` in `[0, 1]` of a maximal causal curve
    /// from `a` to `b`, parametrized so that tau grows linearly in `lambda`.
    fn causal_interpolate(&self, a: &Self::Element, b: &Self::Element, lambda: f64) -> Result<Self::Element>;
}

/// `R^1_1`: the real line with `<`, `<=` and `tau(x, y) = max(y - x, 0)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MinkowskiLine;

impl Metric for MinkowskiLine {
    type Element = f64;

    fn dist(&self, a: &f64, b: &f64) -> Result<f64> {
        Ok((b - a).abs())
    }
}

impl CausalModel for MinkowskiLine {
    fn chron(&self, a: &f64, b: &f64) -> Result<bool> {
        Ok(a < b)
    }

    fn causal(&self, a: &f64, b: &f64) -> Result<bool> {
        Ok(a <= b)
    }

    fn tau(&self, a: &f64, b: &f64) -> Result<ExtReal> {
        Ok(ExtReal::Finite(if a < b { b - a } else { 0.0 }))
    }

    fn name(&self) -> String {
        "R^1_1".into()
    }
}

impl CausalInterpolation for MinkowskiLine {
    fn causal_interpolate(&self, a: &f64, b: &f64, lambda: f64) -> Result<f64> {
        if a > b {
            return domain(format!("{a} is not in the causal past of {b}"));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return domain(format!("interpolation fraction {lambda} outside [0, 1]"));
        }
        Ok(if lambda == 1.0 { *b } else { a + lambda * (b - a) })
    }
}

/// Causal character of a sampled curve, relative to its samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveClass {
    /// Every ordered pair of samples is chronologically related.
    Timelike,
    /// Every ordered pair is causally related, some but not all chronologically.
    Causal,
    /// Causal with no chronologically related pair.
    Null,
    NotCausal,
}

impl CurveClass {
    pub fn is_causal(self) -> bool {
        !matches!(self, CurveClass::NotCausal)
    }
}

pub fn classify_curve<M>(model: &M, curve: &SampledCurve<M::Element>) -> Result<CurveClass>
where
    M: CausalModel,
    M::Element: Clone + Debug + PartialEq,
{
    let pts = curve.points();
    let mut all_chron = true;
    let mut any_chron = false;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if !model.causal(&pts[i], &pts[j])? {
                return Ok(CurveClass::NotCausal);
            }
            let c = model.chron(&pts[i], &pts[j])?;
            all_chron &= c;
            any_chron |= c;
        }
    }
    Ok(match (all_chron, any_chron) {
        (true, _) => CurveClass::Timelike,
        (false, true) => CurveClass::Causal,
        (false, false) => CurveClass::Null,
    })
}

/// tau-length over the sample partition: the sum of tau over consecutive samples.
///
/// By the reverse triangle inequality refining the samples never increases it.
pub fn curve_length_tau<M>(model: &M, curve: &SampledCurve<M::Element>) -> Result<ExtReal>
where
    M: CausalModel,
    M::Element: Clone + Debug + PartialEq,
{
    if !classify_curve(model, curve)?.is_causal() {
        return domain("tau-length is only defined for causal curves");
    }
    curve.points().windows(2).map(|w| model.tau(&w[0], &w[1])).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn line_futures_and_pasts() {
        let m = MinkowskiLine;
        assert!(m.in_chron_future(&0.0, &1.0).unwrap());
        assert!(m.in_causal_future(&0.0, &0.0).unwrap());
        assert!(!m.in_chron_future(&0.0, &0.0).unwrap());
        assert!(m.in_chron_past(&1.0, &0.0).unwrap());
        assert!(!m.in_causal_past(&0.0, &1.0).unwrap());
    }

    #[test]
    fn identity_curve_on_the_line() {
        let c = SampledCurve::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 2.0]).unwrap();
        assert_eq!(classify_curve(&MinkowskiLine, &c).unwrap(), CurveClass::Timelike);
        assert_eq!(curve_length_tau(&MinkowskiLine, &c).unwrap(), ExtReal::Finite(2.0));
    }

    #[test]
    fn backwards_curve_has_no_tau_length() {
        let c = SampledCurve::new(vec![0.0, 1.0], vec![1.0, 0.0]).unwrap();
        assert_eq!(classify_curve(&MinkowskiLine, &c).unwrap(), CurveClass::NotCausal);
        assert!(matches!(curve_length_tau(&MinkowskiLine, &c), Err(Error::Domain(_))));
    }

    #[test]
    fn constant_curve_is_null() {
        let c = SampledCurve::new(vec![0.0, 1.0, 2.0], vec![3.0, 3.0, 3.0]).unwrap();
        assert_eq!(classify_curve(&MinkowskiLine, &c).unwrap(), CurveClass::Null);
        assert_eq!(curve_length_tau(&MinkowskiLine, &c).unwrap(), ExtReal::ZERO);
    }
}
