#![allow(dead_code)]

use causal_diamonds::{Backend, Event, Point};
use proptest::prelude::*;

pub const TOL: f64 = 1e-9;

pub fn backend() -> impl Strategy<Value = Backend> {
    prop_oneof![
        (1usize..=3).prop_map(Backend::Euclidean),
        (1usize..=3).prop_map(Backend::Taxicab),
        (1.0f64..10.0).prop_map(|c| Backend::circle(c).unwrap()),
    ]
}

pub fn point(b: Backend) -> BoxedStrategy<Point> {
    match b {
        Backend::Circle(c) => (0.0..c).prop_map(|x| Point::new(vec![x])).boxed(),
        b => prop::collection::vec(-3.0f64..3.0, b.dim()).prop_map(Point::new).boxed(),
    }
}

pub fn points(b: Backend, n: usize) -> BoxedStrategy<Vec<Point>> {
    prop::collection::vec(point(b), n).boxed()
}

pub fn event(b: Backend) -> BoxedStrategy<Event> {
    (-3.0f64..3.0, point(b)).prop_map(|(t, x)| Event { t, x }).boxed()
}

/// `(backend, e1, e2)` with `e1 <= e2`: `e2` sits `d(x, y) + lag` after `e1`.
pub fn causal_pair(lag: std::ops::Range<f64>) -> BoxedStrategy<(Backend, Event, Event)> {
    backend()
        .prop_flat_map(move |b| (Just(b), event(b), point(b), lag.clone()))
        .prop_map(|(b, e, y, lag)| {
            let d = b.dist(&e.x, &y).unwrap();
            let top = Event { t: e.t + d + lag, x: y };
            (b, e, top)
        })
        .boxed()
}

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL * (1.0 + a.abs().max(b.abs()))
}

use causal_diamonds::lorentz_hyperspace::{lorentz_tubular_membership, EventSet, Sign};
use causal_diamonds::CausalModel;
use std::fmt::Debug;

/// The supremum definition of `tau_H` read off an `r`-grid of spacing `step`:
/// the largest grid radius `r > 0` with `A ⊂ U^-_r(B)` and `B ⊂ U^+_r(A)`,
/// or 0 if there is none. Membership only shrinks as `r` grows, so the grid
/// is searched by doubling and bisection.
pub fn tau_h_by_scan<M>(model: &M, a: &EventSet<M::Element>, b: &EventSet<M::Element>, step: f64) -> f64
where
    M: CausalModel,
    M::Element: Clone + Debug + PartialEq,
{
    let holds = |k: u64| {
        let r = k as f64 * step;
        a.elements().iter().all(|x| lorentz_tubular_membership(model, b, r, x, Sign::Minus).unwrap())
            && b.elements().iter().all(|y| lorentz_tubular_membership(model, a, r, y, Sign::Plus).unwrap())
    };
    if !holds(1) {
        return 0.0;
    }
    let mut lo = 1u64;
    let mut hi = 2u64;
    while holds(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo as f64 * step
}
