//! Taxicab and uniform Lorentzian products, Hausdorff hyperspaces and the
//! hyperspace of causal diamonds, with a sampling audit of the Lorentzian
//! pre-length space axioms.
//!
//! Every model implements [`CausalModel`], so the audits in [`audit`] run
//! unchanged on the line, on products, on finite-set hyperspaces and on
//! diamonds.

// `!(x >= 0.0)` is the idiom here for rejecting NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod backends;
pub mod diamonds;
pub mod error;
pub mod extended;
pub mod lorentz;
pub mod lorentz_hyperspace;
pub mod metric_hyperspace;
pub mod products;
pub mod random;
pub mod spacetime;
pub mod suite;

pub use audit::{audit_axioms, audit_pushup, AuditConfig, Axiom, AxiomReport};
pub use backends::{Backend, Metric, Point};
pub use diamonds::{interval_tau_h, DiamondSpace, Interval};
pub use error::{Error, Result};
pub use extended::ExtReal;
pub use lorentz::{CausalInterpolation, CausalModel, CurveClass, MinkowskiLine};
pub use lorentz_hyperspace::{EventSet, LorentzHyperspace};
pub use metric_hyperspace::{FiniteSet, SampledCurve};
pub use products::{TaxicabProduct, UniformProduct};
pub use spacetime::{Diamond, Event, Spacetime};
