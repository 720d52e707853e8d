//! The standard audit suite: every shipped model, audited for the
//! pre-length space axioms and push-up on seeded pools.
//!
//! Each pool mixes continuous random elements with elements on a dyadic
//! lattice. Lattice elements produce exactly null pairs, so the boundary
//! between the causal and chronological relations is exercised without any
//! rounding in the comparisons.

use std::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::audit::{audit_axioms, audit_pushup, AuditConfig, AxiomReport, AUDIT_TOLERANCE};
use crate::backends::{Backend, Point};
use crate::diamonds::DiamondSpace;
use crate::error::Result;
use crate::lorentz::{CausalModel, MinkowskiLine};
use crate::lorentz_hyperspace::{EventSet, LorentzHyperspace};
use crate::products::{TaxicabProduct, UniformProduct};
use crate::random;
use crate::spacetime::{Diamond, Event, Spacetime};

const LATTICE: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub pool: usize,
    pub tolerance: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, samples: 10_000, pool: 200, tolerance: AUDIT_TOLERANCE }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditKind {
    Axioms,
    PushUp,
}

impl AuditKind {
    pub fn label(self) -> &'static str {
        match self {
            AuditKind::Axioms => "axioms",
            AuditKind::PushUp => "push-up",
        }
    }
}

/// One audit of one model, with witnesses rendered as text.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteEntry {
    pub kind: AuditKind,
    pub report: AxiomReport<String>,
}

impl SuiteEntry {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Runs both audits of `model` on `pool`.
pub fn audit_model<M>(model: &M, pool: &[M::Element], cfg: &AuditConfig) -> Result<Vec<SuiteEntry>>
where
    M: CausalModel + Sync,
    M::Element: Clone + Debug + PartialEq + Send + Sync,
{
    let show = |e: &M::Element| format!("{e:?}");
    Ok(vec![
        SuiteEntry { kind: AuditKind::Axioms, report: audit_axioms(model, pool, cfg)?.map_elements(show) },
        SuiteEntry { kind: AuditKind::PushUp, report: audit_pushup(model, pool, cfg)?.map_elements(show) },
    ])
}

/// Audits every shipped model: the line, the taxicab product over each
/// backend kind, the specialized spacetime, two uniform products, finite-set
/// hyperspaces over the line and over a spacetime, and diamond hyperspaces.
pub fn run_standard_suite(cfg: &SuiteConfig) -> Result<Vec<SuiteEntry>> {
    let audit = AuditConfig { seed: cfg.seed, samples: cfg.samples, tolerance: cfg.tolerance };
    let n = cfg.pool;
    let mut stream = 0u64;
    let mut rng = || {
        let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
        r.set_stream(stream);
        stream += 1;
        r
    };
    let e2 = Backend::Euclidean(2);
    let t2 = Backend::Taxicab(2);
    let c5 = Backend::Circle(5.0);
    let mut out = Vec::new();

    out.extend(audit_model(&MinkowskiLine, &line_pool(&mut rng(), n), &audit)?);
    for b in [e2, t2, c5] {
        let st = Spacetime::new(b);
        let pool: Vec<(f64, Point)> = event_pool(&mut rng(), &st, n).iter().map(Event::to_pair).collect();
        out.extend(audit_model(&TaxicabProduct::new(MinkowskiLine, b), &pool, &audit)?);
    }
    let st = Spacetime::new(e2);
    out.extend(audit_model(&st, &event_pool(&mut rng(), &st, n), &audit)?);

    let (p, q) = (line_pool(&mut rng(), n), line_pool(&mut rng(), n));
    let lines: Vec<(f64, f64)> = p.into_iter().zip(q).collect();
    out.extend(audit_model(&UniformProduct::new(MinkowskiLine, MinkowskiLine), &lines, &audit)?);
    let (sa, sb) = (Spacetime::new(t2), Spacetime::new(Backend::Taxicab(1)));
    let (p, q) = (event_pool(&mut rng(), &sa, n), event_pool(&mut rng(), &sb, n));
    let taxis: Vec<(Event, Event)> = p.into_iter().zip(q).collect();
    out.extend(audit_model(&UniformProduct::new(sa, sb), &taxis, &audit)?);

    let sets = line_set_pool(&mut rng(), n);
    out.extend(audit_model(&LorentzHyperspace::new(MinkowskiLine), &sets, &audit)?);
    let sets = event_set_pool(&mut rng(), &st, n);
    out.extend(audit_model(&LorentzHyperspace::new(st), &sets, &audit)?);

    for b in [e2, c5] {
        let ds = DiamondSpace::new(b);
        out.extend(audit_model(&ds, &diamond_pool(&mut rng(), &ds.spacetime, n), &audit)?);
    }
    Ok(out)
}

fn lattice(rng: &mut ChaCha8Rng, half_steps: i32) -> f64 {
    rng.gen_range(-half_steps..=half_steps) as f64 * LATTICE
}

/// Reals in `[-5, 5]`, alternating uniform and lattice draws.
pub fn line_pool(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|i| if i % 2 == 0 { rng.gen_range(-5.0..=5.0) } else { lattice(rng, 10) }).collect()
}

fn lattice_point(rng: &mut ChaCha8Rng, backend: Backend) -> Point {
    match backend {
        Backend::Circle(c) => {
            let steps = (c / LATTICE) as i32;
            Point::new(vec![rng.gen_range(0..steps) as f64 * LATTICE])
        }
        b => Point::new((0..b.dim()).map(|_| lattice(rng, 3)).collect()),
    }
}

/// Events with times in `[-4, 4]` and positions within 1.5 of the origin,
/// alternating uniform and lattice draws.
pub fn event_pool(rng: &mut ChaCha8Rng, st: &Spacetime, n: usize) -> Vec<Event> {
    (0..n)
        .map(|i| {
            if i % 2 == 0 {
                Event { t: rng.gen_range(-4.0..=4.0), x: random::point(rng, st.backend, 1.5) }
            } else {
                Event { t: lattice(rng, 8), x: lattice_point(rng, st.backend) }
            }
        })
        .collect()
}

/// Clusters of one to three reals within 0.5 of a center.
pub fn line_set_pool(rng: &mut ChaCha8Rng, n: usize) -> Vec<EventSet<f64>> {
    (0..n)
        .map(|i| {
            let c = if i % 2 == 0 { rng.gen_range(-5.0..=5.0) } else { lattice(rng, 10) };
            random::set(rng, 3, |r| {
                if i % 2 == 0 {
                    c + r.gen_range(-0.5..=0.5)
                } else {
                    c + r.gen_range(-2..=2) as f64 * 0.25
                }
            })
        })
        .collect()
}

/// Clusters of one to three events within 0.3 of a center event.
pub fn event_set_pool(rng: &mut ChaCha8Rng, st: &Spacetime, n: usize) -> Vec<EventSet<Event>> {
    let centers = event_pool(rng, st, n);
    centers
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            random::set(rng, 3, |r| {
                if i % 2 == 0 {
                    Event { t: c.t + r.gen_range(-0.3..=0.3), x: random::point_near(r, st.backend, &c.x, 0.3) }
                } else {
                    c.shifted(r.gen_range(-1..=1) as f64 * 0.25)
                }
            })
        })
        .collect()
}

/// Diamonds of height at most about 3, alternating uniform and lattice draws.
/// Lattice diamonds with lattice-exact spatial gaps are null.
pub fn diamond_pool(rng: &mut ChaCha8Rng, st: &Spacetime, n: usize) -> Vec<Diamond> {
    (0..n)
        .map(|i| {
            if i % 2 == 0 {
                let bottom = Event { t: rng.gen_range(-4.0..=4.0), x: random::point(rng, st.backend, 1.5) };
                let top = random::causal_successor(rng, st, &bottom, 1.0, 1.5);
                st.diamond(bottom, top).expect("causal successor")
            } else {
                let bottom = Event { t: lattice(rng, 8), x: lattice_point(rng, st.backend) };
                let x = lattice_point(rng, st.backend);
                let d = st.backend.dist(&bottom.x, &x).expect("same backend");
                let t = bottom.t + (d / LATTICE).ceil() * LATTICE + rng.gen_range(0..=2) as f64 * LATTICE;
                st.diamond(bottom, Event { t, x }).expect("lattice top dominates")
            }
        })
        .collect()
}
