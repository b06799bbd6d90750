//! Solvers for maximum surjective constraint satisfaction over fixed finite
//! templates.
//!
//! An instance and a template are [`Structure`]s over a common [`Signature`].
//! Max-CSP asks for a map from instance elements to template elements that
//! carries as many instance tuples as possible into the template relations;
//! Max-Sur-CSP additionally requires the map to hit every template element.
//!
//! * [`exact`]: exhaustive search and the min-cut solver for 2-monotone
//!   Boolean templates.
//! * [`approx`]: random/derandomized baselines, the degree-seeded surjective
//!   approximation, padding, repair and the cutoff scheme.
//! * [`templates`]: named templates and Boolean classification.
//! * [`harness`]: seeded instance generation and ratio experiments.
//! * [`format`]: the JSON problem file format.

pub mod approx;
pub mod error;
pub mod exact;
pub mod format;
pub mod harness;
pub mod rational;
pub mod report;
pub mod rng;
pub mod solve;
pub mod structure;
pub mod templates;

pub use error::{Error, Result};
pub use rational::Rational;
pub use report::{Branch, Mode, SolveReport};
pub use solve::{solve, SolverConfig};
pub use structure::{
    degree, degrees, evaluate, is_surjective, validate, Assignment, EvalResult, RelationCount,
    RelationSymbol, Signature, Structure,
};
