mod common;

use causal_diamonds::lorentz_hyperspace::{causal_h, tau_h};
use causal_diamonds::metric_hyperspace::{dist_to_slice, hausdorff_by};
use causal_diamonds::suite::diamond_pool;
use causal_diamonds::{
    audit_axioms, audit_pushup, diamonds::interval_tau_h_by_endpoints, interval_tau_h, random, AuditConfig, Backend,
    CausalModel, Diamond, DiamondSpace, Error, Event, Interval, Metric,
};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BACKENDS: [Backend; 3] = [Backend::Euclidean(2), Backend::Taxicab(2), Backend::Circle(5.0)];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A pair that is causally related about half the time.
fn pair(rng: &mut ChaCha8Rng, ds: &DiamondSpace) -> (Diamond, Diamond) {
    let st = &ds.spacetime;
    let d1 = random::diamond(rng, st, 2.0, 0.6, 0.6);
    let d2 = if rng.gen_bool(0.5) {
        random::causal_successor_diamond(rng, st, &d1, 0.6, 0.6)
    } else {
        random::diamond(rng, st, 2.0, 0.6, 0.6)
    };
    (d1, d2)
}

fn causal_pair(rng: &mut ChaCha8Rng, ds: &DiamondSpace) -> (Diamond, Diamond) {
    let d1 = random::diamond(rng, &ds.spacetime, 2.0, 0.6, 0.6);
    let d2 = random::causal_successor_diamond(rng, &ds.spacetime, &d1, 0.6, 0.6);
    (d1, d2)
}

#[test]
fn closed_forms_match_sampled_oracles() {
    let h = 0.1;
    for (i, b) in BACKENDS.into_iter().enumerate() {
        let ds = DiamondSpace::new(b);
        let st = &ds.spacetime;
        let mut rng = rng(i as u64);
        for _ in 0..40 {
            let (d1, d2) = pair(&mut rng, &ds);
            let (s1, s2) = (st.diamond_sample(&d1, h).unwrap(), st.diamond_sample(&d2, h).unwrap());
            let sampled = hausdorff_by(st, s1.elements(), s2.elements()).unwrap();
            let closed = ds.hausdorff(&d1, &d2).unwrap();
            assert!((closed - sampled).abs() <= 2.0 * h, "{b:?}: {closed} vs {sampled}");
            assert_eq!(ds.causal_h(&d1, &d2).unwrap(), causal_h(st, &s1, &s2).unwrap());
            let sampled = tau_h(st, &s1, &s2).unwrap().to_f64();
            assert!((ds.tau_h(&d1, &d2).unwrap() - sampled).abs() <= TOL);
        }
    }
}

#[test]
fn tubular_diamond_is_the_sampled_neighborhood() {
    let h = 0.1;
    for (i, b) in BACKENDS.into_iter().enumerate() {
        let ds = DiamondSpace::new(b);
        let st = &ds.spacetime;
        let mut rng = rng(10 + i as u64);
        for _ in 0..100 {
            let d = random::diamond(&mut rng, st, 1.0, 0.6, 0.6);
            let r = rng.gen_range(0.0..1.5);
            let e = random::event(&mut rng, st, 2.5);
            let sample = st.diamond_sample(&d, h).unwrap();
            let dist = dist_to_slice(st, &e, sample.elements()).unwrap();
            let inside = st.diamond_membership(&ds.tubular(&d, r).unwrap(), &e).unwrap();
            // Samples lie in D, so `dist` only overestimates the distance to D.
            if inside {
                assert!(dist <= r + 2.0 * h, "{b:?}: {dist} > {r} + 2h");
            }
            if dist <= r {
                assert!(inside);
            }
        }
    }
}

#[test]
fn causal_geodesics_are_tau_affine() {
    for (i, b) in BACKENDS.into_iter().enumerate() {
        let ds = DiamondSpace::new(b);
        let mut rng = rng(20 + i as u64);
        for _ in 0..100 {
            let (d1, d2) = causal_pair(&mut rng, &ds);
            let r = ds.hausdorff(&d1, &d2).unwrap();
            for _ in 0..10 {
                let (u, v) = (rng.gen_range(0.0..=r), rng.gen_range(0.0..=r));
                let (u, v) = (u.min(v), u.max(v));
                let (gu, gv) = (ds.causal_geodesic(&d1, &d2, u).unwrap(), ds.causal_geodesic(&d1, &d2, v).unwrap());
                assert!(ds.causal_h(&gu, &gv).unwrap());
                assert!((ds.tau_h(&gu, &gv).unwrap() - (v - u)).abs() <= TOL);
            }
        }
    }
}

#[test]
fn causal_geodesic_endpoint_gap_has_a_closed_form() {
    let ds = DiamondSpace::new(Backend::Euclidean(2));
    let st = &ds.spacetime;
    let mut rng = rng(30);
    let mut nonzero = 0;
    for _ in 0..200 {
        let (d1, d2) = causal_pair(&mut rng, &ds);
        let r = ds.hausdorff(&d1, &d2).unwrap();
        let (g0, gr) = ds.causal_geodesic_endpoint_gap(&d1, &d2).unwrap();
        // gamma(0) keeps the top of D1 and moves the bottom to (t2 - r, x2).
        let (b1, b2) = (d1.bottom(), d2.bottom());
        let expected = (b2.t - r - b1.t).abs() + st.backend.dist(&b1.x, &b2.x).unwrap();
        assert!(close(g0, expected));
        let (t1, t2) = (d1.top(), d2.top());
        let expected = (t1.t + r - t2.t).abs() + st.backend.dist(&t1.x, &t2.x).unwrap();
        assert!(close(gr, expected));
        nonzero += usize::from(g0 > 0.0 || gr > 0.0);
    }
    assert!(nonzero > 0, "the gap is generically nonzero");
}

#[test]
fn interpolation_realizes_the_hausdorff_distance() {
    for (i, b) in BACKENDS.into_iter().enumerate() {
        let ds = DiamondSpace::new(b);
        let mut rng = rng(40 + i as u64);
        let mut done = 0;
        while done < 100 {
            let (d1, d2) = pair(&mut rng, &ds);
            let r = ds.hausdorff(&d1, &d2).unwrap();
            let ts: Vec<f64> = (0..10).map(|_| rng.gen_range(0.0..=r)).collect();
            let path: Result<Vec<Diamond>, Error> = ts.iter().map(|&t| ds.interpolate(&d1, &d2, t)).collect();
            let path = match (b, path) {
                (Backend::Circle(_), Err(Error::Domain(_))) => continue,
                (_, p) => p.unwrap(),
            };
            for (&t, dt) in ts.iter().zip(&path) {
                assert!((ds.hausdorff(&d1, dt).unwrap() - t).abs() <= TOL);
                assert!((ds.hausdorff(dt, &d2).unwrap() - (r - t)).abs() <= TOL);
            }
            for (j, a) in path.iter().enumerate() {
                for (k, c) in path.iter().enumerate() {
                    assert!((ds.hausdorff(a, c).unwrap() - (ts[j] - ts[k]).abs()).abs() <= TOL);
                }
            }
            assert_eq!(ds.interpolate(&d1, &d2, 0.0).unwrap(), d1);
            assert_eq!(ds.interpolate(&d1, &d2, r).unwrap(), d2);
            done += 1;
        }
    }
}

#[test]
fn interpolation_shifts_a_single_vertex_affinely() {
    let ds = DiamondSpace::new(Backend::Euclidean(2));
    let st = &ds.spacetime;
    let d1 = st.diamond(st.event(0.0, [0.0, 0.0]).unwrap(), st.event(10.0, [0.0, 0.0]).unwrap()).unwrap();
    let d2 = st.diamond(st.event(4.0, [0.0, 0.0]).unwrap(), st.event(10.0, [0.0, 0.0]).unwrap()).unwrap();
    let mid = ds.interpolate(&d1, &d2, 2.0).unwrap();
    assert_eq!(mid.bottom().t, 2.0);
    assert_eq!(mid.top(), d1.top());
    assert!(matches!(ds.interpolate(&d1, &d1, 0.0), Err(Error::Degenerate(_))));
}

#[test]
fn embedding_preserves_distance_and_time_separation() {
    for (i, b) in BACKENDS.into_iter().enumerate() {
        let ds = DiamondSpace::new(b);
        let vs = ds.vertex_space();
        let mut rng = rng(50 + i as u64);
        for _ in 0..10_000 {
            let (d1, d2) = pair(&mut rng, &ds);
            let (f1, f2) = (ds.embed(&d1), ds.embed(&d2));
            assert_eq!(vs.dist(&f1, &f2).unwrap(), ds.hausdorff(&d1, &d2).unwrap());
            assert_eq!(vs.tau(&f1, &f2).unwrap().to_f64(), ds.tau_h(&d1, &d2).unwrap());
            assert_eq!(vs.causal(&f1, &f2).unwrap(), ds.causal_h(&d1, &d2).unwrap());
        }
    }
}

#[test]
fn interval_formulas_agree_three_ways() {
    let line = DiamondSpace::new(Backend::Euclidean(0));
    let mut rng = rng(60);
    let mut related = 0;
    for _ in 0..1000 {
        let i1 = Interval::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.0..2.0)).unwrap();
        let i2 = Interval::new(rng.gen_range(-3.0..5.0), rng.gen_range(0.0..2.0)).unwrap();
        let formula = interval_tau_h(&i1, &i2);
        let diamond = line.tau_h(&i1.to_diamond(), &i2.to_diamond()).unwrap();
        let sets = interval_tau_h_by_endpoints(&i1, &i2).unwrap();
        assert!((formula - diamond).abs() <= TOL && (formula - sets).abs() <= TOL, "{i1:?} {i2:?}");
        related += usize::from(formula > 0.0);
    }
    assert!(related > 200);
    let (a, b) = (Interval::from_endpoints(-1.0, 1.0).unwrap(), Interval::from_endpoints(4.0, 6.0).unwrap());
    assert_eq!(interval_tau_h(&a, &b), 5.0);
    assert_eq!(interval_tau_h(&a, &a), 0.0);
}

#[test]
fn samples_and_bracketed_diamonds_stay_bounded() {
    for (i, b) in BACKENDS.into_iter().enumerate() {
        let ds = DiamondSpace::new(b);
        let st = &ds.spacetime;
        let mut rng = rng(70 + i as u64);
        for _ in 0..50 {
            let d = random::diamond(&mut rng, st, 2.0, 0.8, 0.8);
            let h = d.height().max(0.05) / 6.0;
            let height = d.height();
            for e in st.diamond_sample(&d, h).unwrap().elements() {
                assert!(st.dist(d.bottom(), e).unwrap() <= height + 2.0 * height + TOL);
            }
            // A sequence squeezed between two diamonds has its vertices in
            // the diamond spanned by the outer bottom and the outer top.
            let lo = d;
            let mut inner = Vec::new();
            let mut cur = lo.clone();
            for _ in 0..5 {
                cur = random::causal_successor_diamond(&mut rng, st, &cur, 0.3, 0.3);
                inner.push(cur.clone());
            }
            let hi = random::causal_successor_diamond(&mut rng, st, &cur, 0.3, 0.3);
            let hull = st.diamond(lo.bottom().clone(), hi.top().clone()).unwrap();
            for dn in &inner {
                assert!(ds.causal_h(&lo, dn).unwrap() && ds.causal_h(dn, &hi).unwrap());
                assert!(st.diamond_membership(&hull, dn.bottom()).unwrap());
                assert!(st.diamond_membership(&hull, dn.top()).unwrap());
            }
        }
    }
}

#[test]
fn point_diamonds_are_legal() {
    let ds = DiamondSpace::new(Backend::Taxicab(2));
    let e = Event::new(1.0, [0.5, -0.5]);
    let p = Diamond::point(e.clone());
    assert_eq!(ds.tau_h(&p, &p).unwrap(), 0.0);
    assert!(ds.causal_h(&p, &p).unwrap());
    assert_eq!(ds.spacetime.diamond_sample(&p, 0.1).unwrap().elements(), &[e]);
}

#[test]
fn diamond_space_passes_both_audits() {
    let cfg = AuditConfig { samples: 3_000, ..AuditConfig::with_seed(3) };
    for (i, b) in BACKENDS.into_iter().enumerate() {
        let ds = DiamondSpace::new(b);
        let pool = diamond_pool(&mut rng(80 + i as u64), &ds.spacetime, 120);
        let axioms = audit_axioms(&ds, &pool, &cfg).unwrap();
        assert!(axioms.passed(), "{axioms}");
        let pushup = audit_pushup(&ds, &pool, &cfg).unwrap();
        assert!(pushup.passed(), "{pushup}");
    }
}
