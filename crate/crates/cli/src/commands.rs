//! The `diamonds` verbs. Each returns the text for stdout and an exit code;
//! tables go to `--out` when given.

use std::fs;
use std::path::{Path, PathBuf};

use causal_diamonds::audit::AUDIT_TOLERANCE;
use causal_diamonds::lorentz::curve_length_tau;
use causal_diamonds::lorentz_hyperspace::tau_h;
use causal_diamonds::metric_hyperspace::{curve_length_d, hausdorff, hausdorff_by, hyperspace_geodesic};
use causal_diamonds::products::causal_curve_at;
use causal_diamonds::suite::{audit_model, run_standard_suite, SuiteConfig, SuiteEntry};
use causal_diamonds::{
    interval_tau_h, AuditConfig, CausalModel, DiamondSpace, Event, ExtReal, Interval, LorentzHyperspace, Metric,
    Spacetime,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::format::{self, num, row};
use crate::scenario::{Object, Scenario, World, DEFAULT_SCENARIO};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "diamonds", version, about = "Lorentzian products, hyperspaces and causal diamonds")]
pub struct Cli {
    /// Scenario JSON file; the bundled default scenario when omitted.
    #[arg(long, global = true)]
    pub scenario: Option<PathBuf>,
    /// Seed for randomized commands (overrides the scenario's audit seed).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Grid spacing for sampled constructions (overrides the scenario's grid).
    #[arg(long, global = true)]
    pub grid: Option<f64>,
    /// Output path for reports and tables.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Audit every shipped model and the scenario's own objects.
    Audit {
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Sampled pairs and triples per audit.
        #[arg(long)]
        samples: Option<usize>,
        /// Pool size per model.
        #[arg(long)]
        pool: Option<usize>,
    },
    /// Time separation of two events.
    Tau(Pair),
    /// Lorentzian hyperspace time separation of two diamonds or event sets.
    TauH(Pair),
    /// Hausdorff distance of two diamonds, point sets or event sets.
    Hausdorff(Pair),
    /// `tau_H` of two intervals, given by name or as `[lo,hi]`.
    IntervalTau(Pair),
    /// Vertex embedding of a diamond; with `--b`, the product distance and time separation.
    Embed {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
    },
    /// Sample a geodesic or maximal curve into a CSV table.
    Geodesic {
        #[arg(long, value_enum)]
        kind: GeodesicKind,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Number of intervals; tables have `steps + 1` rows.
        #[arg(long, default_value_t = 16)]
        steps: usize,
        /// Number of staircase curves.
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
}

#[derive(Debug, Args)]
pub struct Pair {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeodesicKind {
    MetricSets,
    CausalDiamonds,
    InterpDiamonds,
    MaximalSegment,
    Staircase,
}

/// What a command prints and how the process exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), exit: 0 }
    }
}

pub fn load(path: Option<&Path>) -> Result<World, CliError> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
        None => DEFAULT_SCENARIO.to_string(),
    };
    Scenario::from_json(&text)?.validate()
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let world = load(cli.scenario.as_deref())?;
    let st = world.spacetime;
    let ds = DiamondSpace::new(st.backend);
    match &cli.command {
        Command::Audit { json, samples, pool } => audit(&world, cli, *json, *samples, *pool),
        Command::Tau(p) => match (world.get(&p.a)?, world.get(&p.b)?) {
            (Object::Event(a), Object::Event(b)) => Ok(Outcome::ok(line(st.tau(a, b)?.to_f64()))),
            (a, b) => mismatch("tau", "two events", a, b),
        },
        Command::TauH(p) => match (world.get(&p.a)?, world.get(&p.b)?) {
            (Object::Diamond(a), Object::Diamond(b)) => Ok(Outcome::ok(line(ds.tau_h(a, b)?))),
            (Object::EventSet(a), Object::EventSet(b)) => Ok(Outcome::ok(line(tau_h(&st, a, b)?.to_f64()))),
            (a, b) => mismatch("tau-h", "two diamonds or two event sets", a, b),
        },
        Command::Hausdorff(p) => match (world.get(&p.a)?, world.get(&p.b)?) {
            (Object::Diamond(a), Object::Diamond(b)) => Ok(Outcome::ok(line(ds.hausdorff(a, b)?))),
            (Object::PointSet(a), Object::PointSet(b)) => Ok(Outcome::ok(line(hausdorff(a, b)?))),
            (Object::EventSet(a), Object::EventSet(b)) => {
                Ok(Outcome::ok(line(hausdorff_by(&st, a.elements(), b.elements())?)))
            }
            (a, b) => mismatch("hausdorff", "two diamonds, point sets or event sets", a, b),
        },
        Command::IntervalTau(p) => {
            let (a, b) = (interval(&world, &p.a)?, interval(&world, &p.b)?);
            Ok(Outcome::ok(line(interval_tau_h(&a, &b))))
        }
        Command::Embed { a, b } => embed(&world, &ds, a, b.as_deref()),
        Command::Geodesic { kind, a, b, steps, k } => geodesic(&world, cli, *kind, a, b, *steps, *k),
    }
}

fn line(x: f64) -> String {
    format!("{}\n", num(x))
}

fn mismatch<T>(verb: &str, wanted: &str, a: Object<'_>, b: Object<'_>) -> Result<T, CliError> {
    Err(CliError::Usage(format!("{verb} takes {wanted}, got {} and {}", a.kind(), b.kind())))
}

/// A scenario interval name or a literal `[lo,hi]`.
fn interval(world: &World, arg: &str) -> Result<Interval, CliError> {
    if arg.trim_start().starts_with('[') {
        let v: [f64; 2] = serde_json::from_str(arg)
            .map_err(|e| CliError::Usage(format!("interval `{arg}` is not of the form [lo,hi]: {e}")))?;
        return Ok(Interval::from_endpoints(v[0], v[1])?);
    }
    match world.get(arg)? {
        Object::Interval(i) => Ok(*i),
        o => Err(CliError::Usage(format!("`{arg}` is {}, not an interval", o.kind()))),
    }
}

fn diamond<'a>(world: &'a World, name: &str) -> Result<&'a causal_diamonds::Diamond, CliError> {
    match world.get(name)? {
        Object::Diamond(d) => Ok(d),
        o => Err(CliError::Usage(format!("`{name}` is {}, not a diamond", o.kind()))),
    }
}

fn event<'a>(world: &'a World, name: &str) -> Result<&'a Event, CliError> {
    match world.get(name)? {
        Object::Event(e) => Ok(e),
        o => Err(CliError::Usage(format!("`{name}` is {}, not an event", o.kind()))),
    }
}

fn embed(world: &World, ds: &DiamondSpace, a: &str, b: Option<&str>) -> Result<Outcome, CliError> {
    let d1 = diamond(world, a)?;
    let pair = |d| {
        let (p, q) = ds.embed(d);
        format!("({}, {})", format::event(&p), format::event(&q))
    };
    let mut out = format!("f({a}) = {}\n", pair(d1));
    if let Some(b) = b {
        let d2 = diamond(world, b)?;
        let vs = ds.vertex_space();
        let (f1, f2) = (ds.embed(d1), ds.embed(d2));
        out += &format!("f({b}) = {}\n", pair(d2));
        out += &format!("d_inf = {}\n", num(vs.dist(&f1, &f2)?));
        out += &format!("tau_inf = {}\n", num(vs.tau(&f1, &f2)?.to_f64()));
        out += &format!("d_H = {}\n", num(ds.hausdorff(d1, d2)?));
        out += &format!("tau_H = {}\n", num(ds.tau_h(d1, d2)?));
    }
    Ok(Outcome::ok(out))
}

/// The scenario spacetime with `tau` replaced on listed pairs.
struct Overridden {
    spacetime: Spacetime,
    table: Vec<(Event, Event, f64)>,
}

impl Metric for Overridden {
    type Element = Event;

    fn dist(&self, a: &Event, b: &Event) -> causal_diamonds::Result<f64> {
        self.spacetime.dist(a, b)
    }
}

impl CausalModel for Overridden {
    fn chron(&self, a: &Event, b: &Event) -> causal_diamonds::Result<bool> {
        self.spacetime.chron(a, b)
    }

    fn causal(&self, a: &Event, b: &Event) -> causal_diamonds::Result<bool> {
        self.spacetime.causal(a, b)
    }

    fn tau(&self, a: &Event, b: &Event) -> causal_diamonds::Result<ExtReal> {
        match self.table.iter().find(|(x, y, _)| x == a && y == b) {
            Some(&(_, _, t)) => Ok(ExtReal::Finite(t)),
            None => self.spacetime.tau(a, b),
        }
    }

    fn name(&self) -> String {
        if self.table.is_empty() {
            self.spacetime.name()
        } else {
            format!("{} with {} tau overrides", self.spacetime.name(), self.table.len())
        }
    }
}

fn audit(
    world: &World,
    cli: &Cli,
    as_json: bool,
    samples: Option<usize>,
    pool: Option<usize>,
) -> Result<Outcome, CliError> {
    let seed = cli.seed.unwrap_or(world.audit.seed);
    let samples = samples.unwrap_or(world.audit.samples);
    let pool = pool.unwrap_or(world.audit.pool);
    if samples == 0 || pool == 0 {
        return Err(CliError::Usage("--samples and --pool must be positive".into()));
    }
    let suite = SuiteConfig { seed, samples, pool, tolerance: AUDIT_TOLERANCE };
    let mut entries: Vec<(&str, SuiteEntry)> =
        run_standard_suite(&suite)?.into_iter().map(|e| ("standard", e)).collect();

    let cfg = AuditConfig { seed, samples, tolerance: AUDIT_TOLERANCE };
    let st = world.spacetime;
    if !world.events.is_empty() {
        let model = Overridden { spacetime: st, table: world.overrides.clone() };
        let events: Vec<Event> = world.events.values().cloned().collect();
        entries.extend(audit_model(&model, &events, &cfg)?.into_iter().map(|e| ("scenario events", e)));
    }
    if !world.diamonds.is_empty() {
        let diamonds: Vec<_> = world.diamonds.values().cloned().collect();
        let ds = DiamondSpace::new(st.backend);
        entries.extend(audit_model(&ds, &diamonds, &cfg)?.into_iter().map(|e| ("scenario diamonds", e)));
    }
    if !world.event_sets.is_empty() {
        let sets: Vec<_> = world.event_sets.values().cloned().collect();
        let model = LorentzHyperspace::new(st);
        entries.extend(audit_model(&model, &sets, &cfg)?.into_iter().map(|e| ("scenario event sets", e)));
    }

    let passed = entries.iter().filter(|(_, e)| e.passed()).count();
    let total = entries.len();
    let ok = passed == total;
    let summary = format!("{} {passed}/{total} audits passed\n", if ok { "PASS" } else { "FAIL" });
    let report = if as_json {
        let list: Vec<_> = entries
            .iter()
            .map(|(group, e)| {
                let r = &e.report;
                json!({
                    "group": group,
                    "audit": e.kind.label(),
                    "model": r.model,
                    "seed": r.seed,
                    "pool": r.pool_size,
                    "exhaustive": r.exhaustive,
                    "passed": e.passed(),
                    "checks": r.checks.iter().map(|c| json!({
                        "axiom": c.axiom.label(),
                        "checked": c.checked,
                        "applicable": c.applicable,
                        "witness": c.witness.as_ref().map(|w| json!({"elements": w.elements, "detail": w.detail})),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let doc = json!({"seed": seed, "samples": samples, "pool": pool, "passed": ok, "audits": list});
        serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
    } else {
        let mut text = format!("audit seed {seed}, {samples} samples, pool {pool}\n");
        for (group, e) in &entries {
            text += &format!("{group} {}: {}", e.kind.label(), e.report);
        }
        text + &summary
    };
    let stdout = match &cli.out {
        Some(path) => {
            fs::write(path, &report)?;
            summary
        }
        None => report,
    };
    Ok(Outcome { stdout, stderr: String::new(), exit: if ok { 0 } else { 1 } })
}

/// A CSV table with a header line.
struct Table {
    header: String,
    rows: Vec<String>,
}

impl Table {
    fn render(&self) -> String {
        let mut s = self.header.clone();
        s.push('\n');
        for r in &self.rows {
            s += r;
            s.push('\n');
        }
        s
    }
}

fn event_columns(prefix: &str, dim: usize) -> String {
    let mut cols = vec![format!("{prefix}t")];
    cols.extend((0..dim).map(|i| format!("{prefix}x{i}")));
    cols.join(",")
}

/// Parameter `k / steps` of `[0, span]`, with the last one exactly `span`.
fn grid(span: f64, steps: usize) -> impl Iterator<Item = f64> {
    (0..=steps).map(move |k| if k == steps { span } else { span * k as f64 / steps as f64 })
}

fn geodesic(
    world: &World,
    cli: &Cli,
    kind: GeodesicKind,
    a: &str,
    b: &str,
    steps: usize,
    k: usize,
) -> Result<Outcome, CliError> {
    if steps == 0 {
        return Err(CliError::Usage("--steps must be positive".into()));
    }
    let st = world.spacetime;
    let ds = DiamondSpace::new(st.backend);
    let dim = st.backend.dim();
    let mut summary = String::new();
    let tables: Vec<Table> = match kind {
        GeodesicKind::MaximalSegment => {
            let (e1, e2) = (event(world, a)?, event(world, b)?);
            let curve = st.maximal_segment(e1, e2, steps)?;
            summary += &format!("tau = {}\n", num(st.tau(e1, e2)?.to_f64()));
            summary += &format!("tau-length = {}\n", num(curve_length_tau(&st, &curve)?.to_f64()));
            summary += &format!("d-length = {}\n", num(curve_length_d(&st, &curve)?));
            let rows = curve.samples().map(|(u, e)| row(&[vec![u], format::event_fields(e)].concat())).collect();
            vec![Table { header: format!("u,{}", event_columns("", dim)), rows }]
        }
        GeodesicKind::Staircase => {
            if cli.out.is_none() {
                return Err(CliError::Usage("staircase writes one file per curve and needs --out".into()));
            }
            let (e1, e2) = (event(world, a)?, event(world, b)?);
            let curves = st.alt_maximal_curves(e1, e2, k, cli.seed.unwrap_or(0))?;
            let tau = st.tau(e1, e2)?.to_f64();
            summary += &format!("tau = {}\n", num(tau));
            let mut lengths = Vec::new();
            let mut tables = Vec::new();
            for (i, c) in curves.iter().enumerate() {
                let l = curve_length_tau(&st, c)?.to_f64();
                summary += &format!("curve {}: {} corners, tau-length = {}\n", i + 1, c.len() - 2, num(l));
                lengths.push(l);
                let (t0, t1) = (c.params()[0], c.params()[c.len() - 1]);
                let rows = grid(t1 - t0, steps)
                    .map(|s| {
                        let e = causal_curve_at(&st, c, if s == t1 - t0 { t1 } else { t0 + s })?;
                        Ok(row(&[vec![s], format::event_fields(&e)].concat()))
                    })
                    .collect::<Result<_, CliError>>()?;
                tables.push(Table { header: format!("u,{}", event_columns("", dim)), rows });
            }
            let equal = lengths.iter().all(|l| (l - tau).abs() <= AUDIT_TOLERANCE);
            summary += &format!("all tau-lengths equal tau: {}\n", if equal { "yes" } else { "no" });
            tables
        }
        GeodesicKind::CausalDiamonds | GeodesicKind::InterpDiamonds => {
            let (d1, d2) = (diamond(world, a)?, diamond(world, b)?);
            let r = ds.hausdorff(d1, d2)?;
            let causal = kind == GeodesicKind::CausalDiamonds;
            let at = |u| if causal { ds.causal_geodesic(d1, d2, u) } else { ds.interpolate(d1, d2, u) };
            let start = at(0.0)?;
            let mut worst = 0.0f64;
            let mut rows = Vec::new();
            for u in grid(r, steps) {
                let g = at(u)?;
                let residual = if causal { ds.tau_h(&start, &g)? - u } else { ds.hausdorff(d1, &g)? - u };
                worst = worst.max(residual.abs());
                let fields = [vec![u], format::event_fields(g.bottom()), format::event_fields(g.top()), vec![residual]];
                rows.push(row(&fields.concat()));
            }
            summary += &format!("r = {}\n", num(r));
            let residual = if causal { "tauH_residual" } else { "dH_residual" };
            summary += &format!("max |{residual}| = {}\n", num(worst));
            if causal {
                let (g0, gr) = ds.causal_geodesic_endpoint_gap(d1, d2)?;
                summary +=
                    &format!("endpoint gap d_H(gamma(0), {a}) = {}, d_H(gamma(r), {b}) = {}\n", num(g0), num(gr));
            }
            let header = format!("u,{},{},{residual}", event_columns("b", dim), event_columns("t", dim));
            vec![Table { header, rows }]
        }
        GeodesicKind::MetricSets => {
            let (s1, s2) = match (world.get(a)?, world.get(b)?) {
                (Object::PointSet(x), Object::PointSet(y)) => (x, y),
                (x, y) => return mismatch("metric-sets", "two point sets", x, y),
            };
            let h = cli.grid.unwrap_or(world.audit.grid);
            if !(h > 0.0 && h.is_finite()) {
                return Err(CliError::Usage(format!("--grid must be positive, got {h}")));
            }
            let r = hausdorff(s1, s2)?;
            let mut worst = 0.0f64;
            let mut rows = Vec::new();
            for u in grid(r, steps) {
                let alpha = hyperspace_geodesic(s1, s2, u, h)?;
                let (from, to) = (hausdorff(s1, &alpha)?, hausdorff(&alpha, s2)?);
                worst = worst.max((from - u).abs()).max((to - (r - u)).abs());
                rows.push(row(&[u, alpha.len() as f64, from, to]));
            }
            summary += &format!("r = {}\nh = {}\n", num(r), num(h));
            summary += &format!("max |d_H residual| = {}\n", num(worst));
            vec![Table { header: "u,size,dH_from_a,dH_to_b".into(), rows }]
        }
    };

    match &cli.out {
        // The table owns stdout; the summary goes to stderr.
        None => Ok(Outcome { stdout: tables[0].render(), stderr: summary, exit: 0 }),
        Some(path) => {
            let paths: Vec<PathBuf> = if kind == GeodesicKind::Staircase {
                (1..=tables.len()).map(|i| numbered(path, i)).collect()
            } else {
                vec![path.clone()]
            };
            for (p, t) in paths.iter().zip(&tables) {
                fs::write(p, t.render())?;
                summary += &format!("wrote {}\n", p.display());
            }
            Ok(Outcome::ok(summary))
        }
    }
}

/// `dir/name.csv` -> `dir/name-i.csv`.
fn numbered(path: &Path, i: usize) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{i}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{i}"),
    };
    path.with_file_name(name)
}
