//! Lorentzian structure on finite sets of a causal model: `<<_H`, `<=_H`,
//! `dist_L^-`, `dist_L^+`, Lorentzian tubular sets and `tau_H`.
//!
//! Finite sets make every sup and inf a max and min, so nothing here needs a
//! tolerance. An empty supremum counts as 0, which keeps `tau_H` equal to
//! the min-inf formula on every pair, causally related or not.

use std::cmp::Ordering;
use std::fmt::Debug;

use crate::backends::{Metric, Point};
use crate::error::{domain, Result};
use crate::extended::ExtReal;
use crate::lorentz::CausalModel;
use crate::metric_hyperspace::hausdorff_by;

/// A total order used to canonicalize finite sets.
pub trait CanonicalOrder {
    fn canonical_cmp(&self, other: &Self) -> Ordering;
}

impl CanonicalOrder for f64 {
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
}

impl CanonicalOrder for Point {
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.coords(), other.coords());
        a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or_else(|| a.len().cmp(&b.len()))
    }
}

impl<A: CanonicalOrder, B: CanonicalOrder> CanonicalOrder for (A, B) {
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.0.canonical_cmp(&other.0).then_with(|| self.1.canonical_cmp(&other.1))
    }
}

/// A nonempty, deduplicated finite set, stored in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct EventSet<E> {
    elements: Vec<E>,
}

impl<E: CanonicalOrder + PartialEq> EventSet<E> {
    pub fn new(mut elements: Vec<E>) -> Result<Self> {
        if elements.is_empty() {
            return domain("event sets must be nonempty");
        }
        elements.sort_by(CanonicalOrder::canonical_cmp);
        elements.dedup_by(|a, b| a.canonical_cmp(b).is_eq());
        Ok(EventSet { elements })
    }

    pub fn singleton(e: E) -> Self {
        EventSet { elements: vec![e] }
    }
}

impl<E> EventSet<E> {
    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_elements(self) -> Vec<E> {
        self.elements
    }
}

impl<E: CanonicalOrder> EventSet<E> {
    pub fn contains(&self, e: &E) -> bool {
        self.elements.binary_search_by(|x| x.canonical_cmp(e)).is_ok()
    }
}

/// Every element of `a` relates to some element of `b`, and every element
/// of `b` is related to by some element of `a`.
fn two_sided<E>(a: &[E], b: &[E], rel: impl Fn(&E, &E) -> Result<bool>) -> Result<bool> {
    for x in a {
        if !any(b, |y| rel(x, y))? {
            return Ok(false);
        }
    }
    for y in b {
        if !any(a, |x| rel(x, y))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn any<E>(xs: &[E], f: impl Fn(&E) -> Result<bool>) -> Result<bool> {
    for x in xs {
        if f(x)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn chron_h<M>(model: &M, a: &EventSet<M::Element>, b: &EventSet<M::Element>) -> Result<bool>
where
    M: CausalModel,
    M::Element: Clone + Debug + PartialEq,
{
    two_sided(&a.elements, &b.elements, |x, y| model.chron(x, y))
}

pub fn causal_h<M>(model: &M, a: &EventSet<M::Element>, b: &EventSet<M::Element>) -> Result<bool>
where
    M: CausalModel,
    M::Element: Clone + Debug + PartialEq,
{
    two_sided(&a.elements, &b.elements, |x, y| model.causal(x, y))
}

/// `max_c tau(x, c)`.
pub fn dist_l_minus<M>(model: &M, x: &M::Element, c: &EventSet<M::Element>) -> Result<ExtReal>
where
    M: CausalModel,
    M::Element: Clone + Debug + PartialEq,
{
    c.elements.iter().try_fold(ExtReal::ZERO, |m, y| Ok(m.max(model.tau(x, y)?)))
}

/// `max_c tau(c, x)`.
pub fn dist_l_plus<M>(model: &M, c: &EventSet<M::Element>, x: &M::Element) -> Result<ExtReal>
where
    M: CausalModel,
    M::Element: Clone + Debug + PartialEq,
{
    c.elements.iter().try_fold(ExtReal::ZERO, |m, y| Ok(m.max(model.tau(y, x)?)))
}

/// Which Lorentzian tubular set: `Minus` is the past-side set
/// `{x : dist_L^-(x, C) >= r}`, `Plus` the future-side `{x : dist_L^+(C, x) >= r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Minus,
    Plus,
}

pub fn lorentz_tubular_membership<M>(
    model: &M,
    c: &EventSet<M::Element>,
    r: f64,
    x: &M::Element,
    sign: Sign,
) -> Result<bool>
where
    M: CausalModel,
    M::Element: Clone + Debug + PartialEq,
{
    if !(r > 0.0) {
        return domain(format!("Lorentzian tubular radius must be positive, got {r}"));
    }
    let d = match sign {
        Sign::Minus => dist_l_minus(model, x, c)?,
        Sign::Plus => dist_l_plus(model, c, x)?,
    };
    Ok(d.ge_real(r))
}

/// `min{ inf_a dist_L^-(a, B), inf_b dist_L^+(A, b) }`.
///
/// Each inner maximum stops as soon as it reaches the running minimum, which
/// cannot change the result. Scanning from the canonical end most likely to
/// hold the maximizer (latest elements for `dist_L^-`, earliest for
/// `dist_L^+`) makes the cut-off fire early on time-ordered sets.
pub fn tau_h<M>(model: &M, a: &EventSet<M::Element>, b: &EventSet<M::Element>) -> Result<ExtReal>
where
    M: CausalModel,
    M::Element: Clone + Debug + PartialEq,
{
    let mut best = ExtReal::Infinite;
    for x in a.elements.iter().rev() {
        let mut m = ExtReal::ZERO;
        for y in b.elements.iter().rev() {
            m = m.max(model.tau(x, y)?);
            if m >= best {
                break;
            }
        }
        best = best.min(m);
        if best == ExtReal::ZERO {
            return Ok(best);
        }
    }
    for y in b.elements.iter() {
        let mut m = ExtReal::ZERO;
        for x in a.elements.iter() {
            m = m.max(model.tau(x, y)?);
            if m >= best {
                break;
            }
        }
        best = best.min(m);
        if best == ExtReal::ZERO {
            return Ok(best);
        }
    }
    Ok(best)
}

/// The Lorentzian hyperspace of finite sets of a causal model, with the
/// Hausdorff distance of the model's metric.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzHyperspace<M> {
    pub model: M,
}

impl<M> LorentzHyperspace<M> {
    pub fn new(model: M) -> Self {
        LorentzHyperspace { model }
    }
}

impl<M> Metric for LorentzHyperspace<M>
where
    M: Metric,
{
    type Element = EventSet<M::Element>;

    fn dist(&self, a: &Self::Element, b: &Self::Element) -> Result<f64> {
        hausdorff_by(&self.model, &a.elements, &b.elements)
    }
}

impl<M> CausalModel for LorentzHyperspace<M>
where
    M: CausalModel,
    M::Element: Clone + Debug + PartialEq,
{
    fn chron(&self, a: &Self::Element, b: &Self::Element) -> Result<bool> {
        chron_h(&self.model, a, b)
    }

    fn causal(&self, a: &Self::Element, b: &Self::Element) -> Result<bool> {
        causal_h(&self.model, a, b)
    }

    fn tau(&self, a: &Self::Element, b: &Self::Element) -> Result<ExtReal> {
        tau_h(&self.model, a, b)
    }

    fn name(&self) -> String {
        format!("H({})", self.model.name())
    }
}
