//! Seeded generators for points, events, diamonds and finite sets.
//!
//! Positions are uniform in `[-extent, extent]^n` (uniform on the circle);
//! times are uniform in `[-extent, extent]`; causal offsets add the spatial
//! distance plus a uniform slack in `[0, slack]`.

use rand::Rng;

use crate::backends::{Backend, Point};
use crate::lorentz_hyperspace::{CanonicalOrder, EventSet};
use crate::spacetime::{Diamond, Event, Spacetime};

pub fn point<R: Rng>(rng: &mut R, backend: Backend, extent: f64) -> Point {
    match backend {
        Backend::Circle(c) => {
            let mut x = rng.gen_range(0.0..c);
            if x >= c {
                x = 0.0;
            }
            Point::new(vec![x])
        }
        b => Point::new((0..b.dim()).map(|_| rng.gen_range(-extent..=extent)).collect()),
    }
}

/// A point within distance `radius` of `center` (in the backend's own metric).
pub fn point_near<R: Rng>(rng: &mut R, backend: Backend, center: &Point, radius: f64) -> Point {
    let target = point(rng, backend, 1.0);
    let target = match backend {
        Backend::Circle(_) => target,
        _ => Point::new(center.coords().iter().zip(target.coords()).map(|(c, o)| c + o).collect()),
    };
    let d = backend.dist(center, &target).expect("same backend");
    if d == 0.0 {
        return center.clone();
    }
    let s = rng.gen_range(0.0..=radius.min(d));
    backend.geodesic_point(center, &target, s).expect("arclength in range")
}

pub fn event<R: Rng>(rng: &mut R, st: &Spacetime, extent: f64) -> Event {
    Event { t: rng.gen_range(-extent..=extent), x: point(rng, st.backend, extent) }
}

/// An event in `J^+(e)` at spatial offset at most `reach`, with
/// `tau` uniform in `[0, slack]`.
pub fn causal_successor<R: Rng>(rng: &mut R, st: &Spacetime, e: &Event, reach: f64, slack: f64) -> Event {
    let x = point_near(rng, st.backend, &e.x, reach);
    let d = st.backend.dist(&e.x, &x).expect("same backend");
    Event { t: e.t + d + rng.gen_range(0.0..=slack), x }
}

/// Like [`causal_successor`] but with `tau` strictly positive.
pub fn chron_successor<R: Rng>(rng: &mut R, st: &Spacetime, e: &Event, reach: f64, slack: f64) -> Event {
    let x = point_near(rng, st.backend, &e.x, reach);
    let d = st.backend.dist(&e.x, &x).expect("same backend");
    let mut lag = 0.0;
    while lag <= 0.0 {
        lag = rng.gen_range(0.0..=slack);
    }
    Event { t: e.t + d + lag, x }
}

/// A diamond with bottom from [`event`] and top a causal successor of it.
pub fn diamond<R: Rng>(rng: &mut R, st: &Spacetime, extent: f64, reach: f64, slack: f64) -> Diamond {
    let bottom = event(rng, st, extent);
    let top = causal_successor(rng, st, &bottom, reach, slack);
    st.diamond(bottom, top).expect("top is a causal successor")
}

/// A diamond `D2` with `D1 <=_H D2`.
pub fn causal_successor_diamond<R: Rng>(rng: &mut R, st: &Spacetime, d1: &Diamond, reach: f64, slack: f64) -> Diamond {
    let bottom = causal_successor(rng, st, d1.bottom(), reach, slack);
    let y = point_near(rng, st.backend, &d1.top().x, reach);
    let b = st.backend;
    let from_top = d1.top().t + b.dist(&d1.top().x, &y).expect("same backend");
    let from_bottom = bottom.t + b.dist(&bottom.x, &y).expect("same backend");
    let top = Event { t: from_top.max(from_bottom) + rng.gen_range(0.0..=slack), x: y };
    st.diamond(bottom, top).expect("top dominates both constraints")
}

/// A nonempty set of `1..=max_len` elements drawn by `draw`.
pub fn set<R: Rng, E: CanonicalOrder + PartialEq>(
    rng: &mut R,
    max_len: usize,
    mut draw: impl FnMut(&mut R) -> E,
) -> EventSet<E> {
    let n = rng.gen_range(1..=max_len.max(1));
    EventSet::new((0..n).map(|_| draw(rng)).collect()).expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::CausalModel;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_satisfy_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for b in [Backend::Euclidean(2), Backend::Taxicab(3), Backend::circle(5.0).unwrap()] {
            let st = Spacetime::new(b);
            for _ in 0..200 {
                let d1 = diamond(&mut rng, &st, 3.0, 1.0, 1.0);
                let d2 = causal_successor_diamond(&mut rng, &st, &d1, 1.0, 1.0);
                assert!(st.causal(d1.bottom(), d2.bottom()).unwrap());
                assert!(st.causal(d1.top(), d2.top()).unwrap());
                let e = chron_successor(&mut rng, &st, d1.top(), 1.0, 1.0);
                assert!(st.chron(d1.top(), &e).unwrap());
                let c = point_near(&mut rng, b, &d1.bottom().x, 0.5);
                assert!(b.dist(&c, &d1.bottom().x).unwrap() <= 0.5 + 1e-12);
            }
        }
    }

    #[test]
    fn generators_are_seed_deterministic() {
        let st = Spacetime::new(Backend::Euclidean(2));
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..10).map(|_| diamond(&mut rng, &st, 1.0, 1.0, 1.0)).collect::<Vec<_>>()
        };
        assert_eq!(draw(9), draw(9));
        assert_ne!(draw(9), draw(10));
    }
}
