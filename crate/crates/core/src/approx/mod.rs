//! Approximation algorithms for Max-CSP and Max-Sur-CSP.
//!
//! * [`max_csp_approx`]: uniform random map, or its derandomization by
//!   conditional expectations.
//! * [`approx_seeded`]: surjective variant that first pins the `|B|` lowest
//!   degree elements onto distinct values.
//! * [`pad_instance`] / [`unpad_solution`]: reduction from Max-CSP to
//!   Max-Sur-CSP by adding `|B|` isolated elements.
//! * [`repair`] / [`ptas_solve`]: turn any Max-CSP map surjective by moving
//!   elements onto missing values, with an exhaustive cutoff for small inputs.

mod bound;
mod expectation;
mod padding;
mod repair;
mod seeded;

pub use bound::{random_ratio, RatioBound};
pub use expectation::{derandomize, derandomize_trace, expected_value};
pub use padding::{pad_instance, unpad_solution};
pub use repair::{
    default_inner, ptas_cutoff, ptas_solve, repair, InnerSolver, MaxCspSolver, RepairStrategy,
};
pub use seeded::{approx_seeded, max_csp_approx, seeded_order};
