//! Scenario files: a JSON document of named events, diamonds, finite sets
//! and intervals over one backend, plus audit parameters.
//!
//! Maps are kept sorted by name, so writing a loaded scenario reproduces
//! the bytes of any file that was itself written by [`Scenario::to_json`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;

use causal_diamonds::{Backend, Diamond, Event, EventSet, FiniteSet, Interval, Point, Spacetime};
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::CliError;

/// The scenario used when no `--scenario` is given.
pub const DEFAULT_SCENARIO: &str = include_str!("../scenarios/default.json");

/// A name-keyed map that rejects duplicate keys when deserialized.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct NamedMap<V>(pub BTreeMap<String, V>);

impl<V> Default for NamedMap<V> {
    fn default() -> Self {
        NamedMap(BTreeMap::new())
    }
}

impl<V> NamedMap<V> {
    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for NamedMap<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Unique<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for Unique<V> {
            type Value = NamedMap<V>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from unique names to objects")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut map = BTreeMap::new();
                while let Some((name, value)) = access.next_entry::<String, V>()? {
                    if map.insert(name.clone(), value).is_some() {
                        return Err(serde::de::Error::custom(format!("duplicate name `{name}`")));
                    }
                }
                Ok(NamedMap(map))
            }
        }

        deserializer.deserialize_map(Unique(PhantomData))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BackendSpec {
    Euclidean { dim: usize },
    Taxicab { dim: usize },
    Circle { circumference: f64 },
}

impl BackendSpec {
    pub fn build(&self) -> Result<Backend, CliError> {
        match *self {
            BackendSpec::Euclidean { dim } => Ok(Backend::Euclidean(dim)),
            BackendSpec::Taxicab { dim } => Ok(Backend::Taxicab(dim)),
            BackendSpec::Circle { circumference } => {
                Backend::circle(circumference).map_err(|e| CliError::Usage(format!("backend: {e}")))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventSpec {
    pub t: f64,
    pub x: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiamondSpec {
    pub bottom: EventSpec,
    pub top: EventSpec,
}

/// A finite set of spatial points (for the metric hyperspace) or of events
/// (for the Lorentzian hyperspace).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SetSpec {
    Points { points: Vec<Vec<f64>> },
    Events { events: Vec<EventSpec> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalSpec {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AuditSpec {
    pub seed: u64,
    pub samples: usize,
    pub pool: usize,
    pub grid: f64,
}

impl Default for AuditSpec {
    fn default() -> Self {
        AuditSpec { seed: 0, samples: 10_000, pool: 200, grid: 0.05 }
    }
}

/// A replacement value for `tau` on one ordered pair of named events.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauOverride {
    pub a: String,
    pub b: String,
    pub tau: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub backend: BackendSpec,
    #[serde(default, skip_serializing_if = "NamedMap::is_empty")]
    pub events: NamedMap<EventSpec>,
    #[serde(default, skip_serializing_if = "NamedMap::is_empty")]
    pub diamonds: NamedMap<DiamondSpec>,
    #[serde(default, skip_serializing_if = "NamedMap::is_empty")]
    pub sets: NamedMap<SetSpec>,
    #[serde(default, skip_serializing_if = "NamedMap::is_empty")]
    pub intervals: NamedMap<IntervalSpec>,
    #[serde(default)]
    pub audit: AuditSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tau_overrides: Vec<TauOverride>,
}

impl Scenario {
    /// Parses a scenario; errors carry the line, column and offending field.
    pub fn from_json(text: &str) -> Result<Scenario, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("scenario parse error: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario values serialize");
        s.push('\n');
        s
    }

    /// Validates every object against its invariants.
    pub fn validate(&self) -> Result<World, CliError> {
        let spacetime = Spacetime::new(self.backend.build()?);
        let mut seen = BTreeSet::new();
        let names = self.events.0.keys().chain(self.diamonds.0.keys()).chain(self.sets.0.keys());
        for name in names.chain(self.intervals.0.keys()) {
            if !seen.insert(name) {
                return Err(CliError::Usage(format!("name `{name}` is used by two objects")));
            }
        }
        let invalid =
            |what: &str, name: &str, e: causal_diamonds::Error| CliError::Usage(format!("{what}.{name}: {e}"));

        let mut events = BTreeMap::new();
        for (name, e) in &self.events.0 {
            events.insert(name.clone(), event(&spacetime, e).map_err(|e| invalid("events", name, e))?);
        }
        let mut diamonds = BTreeMap::new();
        for (name, d) in &self.diamonds.0 {
            let build = || spacetime.diamond(event(&spacetime, &d.bottom)?, event(&spacetime, &d.top)?);
            diamonds.insert(name.clone(), build().map_err(|e| invalid("diamonds", name, e))?);
        }
        let mut point_sets = BTreeMap::new();
        let mut event_sets = BTreeMap::new();
        for (name, s) in &self.sets.0 {
            match s {
                SetSpec::Points { points } => {
                    let build = || {
                        let pts = points
                            .iter()
                            .map(|p| {
                                let q = Point::new(p.clone());
                                spacetime.backend.point(p.clone())?;
                                spacetime.backend.check(&q)?;
                                Ok(q)
                            })
                            .collect::<causal_diamonds::Result<Vec<_>>>()?;
                        FiniteSet::new(spacetime.backend, pts)
                    };
                    point_sets.insert(name.clone(), build().map_err(|e| invalid("sets", name, e))?);
                }
                SetSpec::Events { events: members } => {
                    let build = || {
                        let evs =
                            members.iter().map(|e| event(&spacetime, e)).collect::<causal_diamonds::Result<_>>()?;
                        EventSet::new(evs)
                    };
                    event_sets.insert(name.clone(), build().map_err(|e| invalid("sets", name, e))?);
                }
            }
        }
        let mut intervals = BTreeMap::new();
        for (name, i) in &self.intervals.0 {
            let iv = Interval::from_endpoints(i.lo, i.hi).map_err(|e| invalid("intervals", name, e))?;
            intervals.insert(name.clone(), iv);
        }
        let a = self.audit;
        if a.samples == 0 || a.pool == 0 || !(a.grid > 0.0 && a.grid.is_finite()) {
            return Err(CliError::Usage("audit: samples and pool must be positive, grid positive and finite".into()));
        }
        let mut overrides = Vec::new();
        for (i, o) in self.tau_overrides.iter().enumerate() {
            let lookup = |n: &str| {
                events
                    .get(n)
                    .cloned()
                    .ok_or_else(|| CliError::Usage(format!("tau_overrides[{i}]: `{n}` is not a named event")))
            };
            if !(o.tau >= 0.0 && o.tau.is_finite()) {
                return Err(CliError::Usage(format!("tau_overrides[{i}]: tau must be finite and nonnegative")));
            }
            overrides.push((lookup(&o.a)?, lookup(&o.b)?, o.tau));
        }
        Ok(World { spacetime, events, diamonds, point_sets, event_sets, intervals, audit: a, overrides })
    }
}

/// Builds an event strictly: coordinates must already be in range.
fn event(st: &Spacetime, e: &EventSpec) -> causal_diamonds::Result<Event> {
    st.event(e.t, e.x.clone())?;
    let ev = Event { t: e.t, x: Point::new(e.x.clone()) };
    st.check(&ev)?;
    Ok(ev)
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct World {
    pub spacetime: Spacetime,
    pub events: BTreeMap<String, Event>,
    pub diamonds: BTreeMap<String, Diamond>,
    pub point_sets: BTreeMap<String, FiniteSet>,
    pub event_sets: BTreeMap<String, EventSet<Event>>,
    pub intervals: BTreeMap<String, Interval>,
    pub audit: AuditSpec,
    pub overrides: Vec<(Event, Event, f64)>,
}

/// A named scenario object.
#[derive(Debug, Clone, Copy)]
pub enum Object<'a> {
    Event(&'a Event),
    Diamond(&'a Diamond),
    PointSet(&'a FiniteSet),
    EventSet(&'a EventSet<Event>),
    Interval(&'a Interval),
}

impl Object<'_> {
    /// The kind of object, with its article.
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Event(_) => "an event",
            Object::Diamond(_) => "a diamond",
            Object::PointSet(_) => "a point set",
            Object::EventSet(_) => "an event set",
            Object::Interval(_) => "an interval",
        }
    }
}

impl World {
    pub fn get(&self, name: &str) -> Result<Object<'_>, CliError> {
        self.events
            .get(name)
            .map(Object::Event)
            .or_else(|| self.diamonds.get(name).map(Object::Diamond))
            .or_else(|| self.point_sets.get(name).map(Object::PointSet))
            .or_else(|| self.event_sets.get(name).map(Object::EventSet))
            .or_else(|| self.intervals.get(name).map(Object::Interval))
            .ok_or_else(|| CliError::Usage(format!("unknown name `{name}`")))
    }
}
