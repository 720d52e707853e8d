//! Sample-based audits of the Lorentzian pre-length space axioms.
//!
//! An audit takes a pool of elements and checks every axiom on pairs and
//! triples drawn from it. Small pools are checked exhaustively. Larger
//! pools are checked on `samples` uniformly random pairs and triples plus
//! `samples` chain-directed triples, built by walking the causal (and for
//! push-up, chronological) relation inside the pool, so that the
//! implications are exercised on their hypotheses and not only vacuously.
//!
//! Index tuples are drawn sequentially from a seeded ChaCha stream and then
//! evaluated in parallel; the first failure in draw order becomes the
//! witness, so reports depend only on the seed.

use std::fmt::{self, Debug};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::lorentz::CausalModel;

/// Default absolute tolerance for numeric inequalities.
pub const AUDIT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditConfig {
    pub seed: u64,
    /// Random pairs, random triples and chain-directed triples drawn when the
    /// pool is too large for exhaustive checking.
    pub samples: usize,
    pub tolerance: f64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { seed: 0, samples: 10_000, tolerance: AUDIT_TOLERANCE }
    }
}

impl AuditConfig {
    pub fn with_seed(seed: u64) -> Self {
        AuditConfig { seed, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    MetricNonnegative,
    MetricIdentity,
    MetricSymmetry,
    MetricTriangle,
    CausalReflexive,
    CausalTransitive,
    ChronTransitive,
    ChronWithinCausal,
    TauPositiveIffChron,
    TauZeroOffCausal,
    ReverseTriangle,
    PushUp,
}

impl Axiom {
    pub fn label(self) -> &'static str {
        match self {
            Axiom::MetricNonnegative => "metric nonnegativity",
            Axiom::MetricIdentity => "metric identity of indiscernibles",
            Axiom::MetricSymmetry => "metric symmetry",
            Axiom::MetricTriangle => "metric triangle inequality",
            Axiom::CausalReflexive => "causal reflexivity",
            Axiom::CausalTransitive => "causal transitivity",
            Axiom::ChronTransitive => "chronological transitivity",
            Axiom::ChronWithinCausal => "chron implies causal",
            Axiom::TauPositiveIffChron => "tau > 0 iff chron",
            Axiom::TauZeroOffCausal => "tau = 0 off the causal relation",
            Axiom::ReverseTriangle => "reverse triangle inequality",
            Axiom::PushUp => "push-up",
        }
    }
}

/// Concrete elements on which an axiom fails.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<E> {
    pub elements: Vec<E>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomCheck<E> {
    pub axiom: Axiom,
    /// Tuples examined.
    pub checked: usize,
    /// Tuples satisfying the axiom's hypothesis.
    pub applicable: usize,
    pub witness: Option<Witness<E>>,
}

impl<E> AxiomCheck<E> {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport<E> {
    pub model: String,
    pub seed: u64,
    pub pool_size: usize,
    pub exhaustive: bool,
    pub checks: Vec<AxiomCheck<E>>,
}

impl<E> AxiomReport<E> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn check(&self, axiom: Axiom) -> Option<&AxiomCheck<E>> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck<E>> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// The same report with witness elements converted by `f`.
    pub fn map_elements<F, G: FnMut(&E) -> F>(&self, mut f: G) -> AxiomReport<F> {
        AxiomReport {
            model: self.model.clone(),
            seed: self.seed,
            pool_size: self.pool_size,
            exhaustive: self.exhaustive,
            checks: self
                .checks
                .iter()
                .map(|c| AxiomCheck {
                    axiom: c.axiom,
                    checked: c.checked,
                    applicable: c.applicable,
                    witness: c.witness.as_ref().map(|w| Witness {
                        elements: w.elements.iter().map(&mut f).collect(),
                        detail: w.detail.clone(),
                    }),
                })
                .collect(),
        }
    }
}

impl<E: Debug> fmt::Display for AxiomReport<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "model {} (pool {}, seed {}, {})",
            self.model,
            self.pool_size,
            self.seed,
            if self.exhaustive { "exhaustive" } else { "sampled" }
        )?;
        for c in &self.checks {
            write!(
                f,
                "  [{}] {}: {} checked, {} applicable",
                if c.passed() { "PASS" } else { "FAIL" },
                c.axiom.label(),
                c.checked,
                c.applicable
            )?;
            if let Some(w) = &c.witness {
                write!(f, "; witness {:?}: {}", w.elements, w.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Result of checking one axiom on one tuple.
enum Verdict {
    Vacuous,
    Holds,
    Fails(String),
}

struct Tally {
    axiom: Axiom,
    checked: usize,
    applicable: usize,
    witness: Option<(Vec<usize>, String)>,
}

impl Tally {
    fn new(axiom: Axiom) -> Self {
        Tally { axiom, checked: 0, applicable: 0, witness: None }
    }

    fn record(&mut self, idx: &[usize], v: Verdict) {
        self.checked += 1;
        match v {
            Verdict::Vacuous => {}
            Verdict::Holds => self.applicable += 1,
            Verdict::Fails(detail) => {
                self.applicable += 1;
                if self.witness.is_none() {
                    self.witness = Some((idx.to_vec(), detail));
                }
            }
        }
    }

    fn finish<E: Clone>(self, pool: &[E]) -> AxiomCheck<E> {
        AxiomCheck {
            axiom: self.axiom,
            checked: self.checked,
            applicable: self.applicable,
            witness: self
                .witness
                .map(|(idx, detail)| Witness { elements: idx.iter().map(|&i| pool[i].clone()).collect(), detail }),
        }
    }
}

fn implies(hyp: bool, concl: bool, detail: impl FnOnce() -> String) -> Verdict {
    match (hyp, concl) {
        (false, _) => Verdict::Vacuous,
        (true, true) => Verdict::Holds,
        (true, false) => Verdict::Fails(detail()),
    }
}

/// Pairwise relation tables over the pool.
struct Relations {
    causal_succ: Vec<Vec<usize>>,
    chron_succ: Vec<Vec<usize>>,
}

fn relations<M>(model: &M, pool: &[M::Element]) -> Result<Relations>
where
    M: CausalModel + Sync,
    M::Element: Clone + Debug + PartialEq + Send + Sync,
{
    let rows: Vec<(Vec<usize>, Vec<usize>)> = (0..pool.len())
        .into_par_iter()
        .map(|i| {
            let mut causal = Vec::new();
            let mut chron = Vec::new();
            for j in 0..pool.len() {
                if i == j {
                    continue;
                }
                if model.causal(&pool[i], &pool[j])? {
                    causal.push(j);
                }
                if model.chron(&pool[i], &pool[j])? {
                    chron.push(j);
                }
            }
            Ok((causal, chron))
        })
        .collect::<Result<_>>()?;
    let (causal_succ, chron_succ) = rows.into_iter().unzip();
    Ok(Relations { causal_succ, chron_succ })
}

fn pick(rng: &mut ChaCha8Rng, succ: &[usize], fallback: usize) -> usize {
    if succ.is_empty() {
        fallback
    } else {
        succ[rng.gen_range(0..succ.len())]
    }
}

fn all_pairs(n: usize) -> Vec<[usize; 2]> {
    (0..n).flat_map(|i| (0..n).map(move |j| [i, j])).collect()
}

fn all_triples(n: usize) -> Vec<[usize; 3]> {
    (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| [i, j, k]))).collect()
}

/// Pair and triple index lists for an audit.
struct Plan {
    exhaustive: bool,
    pairs: Vec<[usize; 2]>,
    triples: Vec<[usize; 3]>,
}

fn plan<M>(
    model: &M,
    pool: &[M::Element],
    cfg: &AuditConfig,
    mut directed: impl FnMut(&mut ChaCha8Rng, &Relations) -> [usize; 3],
) -> Result<Plan>
where
    M: CausalModel + Sync,
    M::Element: Clone + Debug + PartialEq + Send + Sync,
{
    let n = pool.len();
    let exhaustive = n.saturating_pow(3) <= cfg.samples;
    if exhaustive {
        return Ok(Plan { exhaustive, pairs: all_pairs(n), triples: all_triples(n) });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pairs = if n * n <= cfg.samples {
        all_pairs(n)
    } else {
        (0..cfg.samples).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n)]).collect()
    };
    let mut triples: Vec<[usize; 3]> =
        (0..cfg.samples).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)]).collect();
    let rel = relations(model, pool)?;
    triples.extend((0..cfg.samples).map(|_| directed(&mut rng, &rel)));
    Ok(Plan { exhaustive, pairs, triples })
}

fn run<T, F>(tuples: &[T], axioms: &[Axiom], eval: F) -> Result<Vec<Tally>>
where
    T: AsRef<[usize]> + Sync,
    F: Fn(&[usize]) -> Result<Vec<Verdict>> + Sync,
{
    let verdicts: Vec<Vec<Verdict>> = tuples.par_iter().map(|t| eval(t.as_ref())).collect::<Result<_>>()?;
    let mut tallies: Vec<Tally> = axioms.iter().map(|&a| Tally::new(a)).collect();
    for (t, vs) in tuples.iter().zip(verdicts) {
        for (tally, v) in tallies.iter_mut().zip(vs) {
            tally.record(t.as_ref(), v);
        }
    }
    Ok(tallies)
}

/// Checks the metric axioms, the pre-order and chronology axioms, the
/// tau/chron correspondence and the reverse triangle inequality.
///
/// Axiom failures are reported with witnesses; `Err` only signals
/// structurally invalid elements.
pub fn audit_axioms<M>(model: &M, pool: &[M::Element], cfg: &AuditConfig) -> Result<AxiomReport<M::Element>>
where
    M: CausalModel + Sync,
    M::Element: Clone + Debug + PartialEq + Send + Sync,
{
    let tol = cfg.tolerance;
    let plan = plan(model, pool, cfg, |rng, rel| {
        let n = rel.causal_succ.len();
        let i = rng.gen_range(0..n);
        let j = pick(rng, &rel.causal_succ[i], i);
        let k = pick(rng, &rel.causal_succ[j], j);
        [i, j, k]
    })?;

    let singles: Vec<[usize; 1]> = (0..pool.len()).map(|i| [i]).collect();
    let reflexive = run(&singles, &[Axiom::CausalReflexive], |t| {
        let a = &pool[t[0]];
        Ok(vec![implies(true, model.causal(a, a)?, || "a is not causally related to itself".into())])
    })?;

    let pair_axioms = [
        Axiom::MetricNonnegative,
        Axiom::MetricIdentity,
        Axiom::MetricSymmetry,
        Axiom::ChronWithinCausal,
        Axiom::TauPositiveIffChron,
        Axiom::TauZeroOffCausal,
    ];
    let pairs = run(&plan.pairs, &pair_axioms, |t| {
        let (a, b) = (&pool[t[0]], &pool[t[1]]);
        let d_ab = model.dist(a, b)?;
        let d_ba = model.dist(b, a)?;
        let chron = model.chron(a, b)?;
        let causal = model.causal(a, b)?;
        let tau = model.tau(a, b)?;
        let equal = a == b;
        Ok(vec![
            implies(true, d_ab >= 0.0, || format!("d = {d_ab}")),
            implies(true, (d_ab == 0.0) == equal, || {
                format!("d = {d_ab} but elements {}", if equal { "equal" } else { "differ" })
            }),
            implies(true, (d_ab - d_ba).abs() <= tol, || format!("d(a,b) = {d_ab}, d(b,a) = {d_ba}")),
            implies(chron, causal, || "a << b but not a <= b".into()),
            implies(true, tau.is_positive() == chron, || format!("tau = {tau}, chron = {chron}")),
            implies(!causal, tau == crate::extended::ExtReal::ZERO, || format!("tau = {tau} off J^+")),
        ])
    })?;

    let triple_axioms =
        [Axiom::MetricTriangle, Axiom::CausalTransitive, Axiom::ChronTransitive, Axiom::ReverseTriangle];
    let triples = run(&plan.triples, &triple_axioms, |t| {
        let (a, b, c) = (&pool[t[0]], &pool[t[1]], &pool[t[2]]);
        let (d_ab, d_bc, d_ac) = (model.dist(a, b)?, model.dist(b, c)?, model.dist(a, c)?);
        let (le_ab, le_bc, le_ac) = (model.causal(a, b)?, model.causal(b, c)?, model.causal(a, c)?);
        let (ll_ab, ll_bc) = (model.chron(a, b)?, model.chron(b, c)?);
        let ll_ac = if ll_ab && ll_bc { model.chron(a, c)? } else { false };
        let reverse = if le_ab && le_bc {
            let (t_ab, t_bc, t_ac) = (model.tau(a, b)?, model.tau(b, c)?, model.tau(a, c)?);
            let sum = t_ab + t_bc;
            let ok = match (t_ac.finite(), sum.finite()) {
                (_, None) => t_ac.is_infinite(),
                (None, Some(_)) => true,
                (Some(x), Some(s)) => x >= s - tol,
            };
            implies(true, ok, || format!("tau(a,c) = {t_ac} < tau(a,b) + tau(b,c) = {t_ab} + {t_bc}"))
        } else {
            Verdict::Vacuous
        };
        Ok(vec![
            implies(true, d_ac <= d_ab + d_bc + tol, || format!("d(a,c) = {d_ac} > d(a,b) + d(b,c) = {d_ab} + {d_bc}")),
            implies(le_ab && le_bc, le_ac, || "a <= b <= c but not a <= c".into()),
            implies(ll_ab && ll_bc, ll_ac, || "a << b << c but not a << c".into()),
            reverse,
        ])
    })?;

    let checks = reflexive.into_iter().chain(pairs).chain(triples).map(|t| t.finish(pool)).collect();
    Ok(AxiomReport { model: model.name(), seed: cfg.seed, pool_size: pool.len(), exhaustive: plan.exhaustive, checks })
}

/// Checks that `x <= y << z` and `x << y <= z` both force `x << z`.
pub fn audit_pushup<M>(model: &M, pool: &[M::Element], cfg: &AuditConfig) -> Result<AxiomReport<M::Element>>
where
    M: CausalModel + Sync,
    M::Element: Clone + Debug + PartialEq + Send + Sync,
{
    // Alternate between the two composition shapes.
    let mut causal_first = false;
    let plan = plan(model, pool, cfg, |rng, rel| {
        let n = rel.causal_succ.len();
        let i = rng.gen_range(0..n);
        causal_first = !causal_first;
        if causal_first {
            let j = pick(rng, &rel.causal_succ[i], i);
            let k = pick(rng, &rel.chron_succ[j], j);
            [i, j, k]
        } else {
            let j = pick(rng, &rel.chron_succ[i], i);
            let k = pick(rng, &rel.causal_succ[j], j);
            [i, j, k]
        }
    })?;
    let triples = run(&plan.triples, &[Axiom::PushUp], |t| {
        let (x, y, z) = (&pool[t[0]], &pool[t[1]], &pool[t[2]]);
        let le_xy = model.causal(x, y)?;
        let ll_xy = model.chron(x, y)?;
        let le_yz = model.causal(y, z)?;
        let ll_yz = model.chron(y, z)?;
        let hyp = (le_xy && ll_yz) || (ll_xy && le_yz);
        let concl = if hyp { model.chron(x, z)? } else { false };
        Ok(vec![implies(hyp, concl, || {
            if le_xy && ll_yz {
                "x <= y << z but not x << z".into()
            } else {
                "x << y <= z but not x << z".into()
            }
        })])
    })?;
    Ok(AxiomReport {
        model: model.name(),
        seed: cfg.seed,
        pool_size: pool.len(),
        exhaustive: plan.exhaustive,
        checks: triples.into_iter().map(|t| t.finish(pool)).collect(),
    })
}
