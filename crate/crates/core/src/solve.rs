//! One entry point for every solver mode, shared by the CLI and the harness.

use crate::approx::{
    approx_seeded, default_inner, max_csp_approx, ptas_solve, repair, RatioBound, RepairStrategy,
};
use crate::error::Result;
use crate::exact::{brute_force_with_cap, two_monotone_solve, AnchorMode, DEFAULT_CAP};
use crate::rational::{rational, Rational};
use crate::report::{Mode, SolveReport};
use crate::structure::{validate, Structure};
use crate::approx::MaxCspSolver;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub mode: Mode,
    pub seed: u64,
    /// Use the derandomized variant where one exists.
    pub deterministic: bool,
    /// `approx2`: try every repair choice sequence.
    pub enumerate_all: bool,
    pub epsilon: Rational,
    pub cap: u64,
    /// `mincut`: only constraint anchor pairs.
    pub constraint_anchors: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            mode: Mode::ExactSur,
            seed: 0,
            deterministic: false,
            enumerate_all: false,
            epsilon: rational(1, 10),
            cap: DEFAULT_CAP,
            constraint_anchors: false,
        }
    }
}

impl SolverConfig {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }

    pub fn deterministic(mut self) -> Self {
        self.deterministic = true;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

pub fn solve(instance: &Structure, template: &Structure, config: &SolverConfig) -> Result<SolveReport> {
    let randomized = !config.deterministic;
    match config.mode {
        Mode::Exact => brute_force_with_cap(instance, template, false, config.cap),
        Mode::ExactSur => brute_force_with_cap(instance, template, true, config.cap),
        Mode::MinCut => {
            let anchors = if config.constraint_anchors {
                AnchorMode::ConstraintsOnly
            } else {
                AnchorMode::Extended
            };
            two_monotone_solve(instance, template, anchors)
        }
        Mode::ApproxRandom => max_csp_approx(instance, template, randomized, config.seed),
        Mode::ApproxSeeded => approx_seeded(instance, template, randomized, config.seed),
        Mode::Approx2 => {
            validate(instance, template, true)?;
            let (inner, inner_ratio) = default_inner(template);
            let h = inner.solve(instance, template)?;
            let strategy = if config.enumerate_all {
                RepairStrategy::EnumerateAll
            } else if config.deterministic {
                RepairStrategy::FirstChoice
            } else {
                RepairStrategy::Random { seed: config.seed }
            };
            let mut report = repair(instance, template, &h, strategy)?;
            let factor = report.guarantee.as_ref().and_then(|g| g.structural_factor);
            report.guarantee = Some(RatioBound::for_template(template).scaled(factor, inner_ratio));
            Ok(report)
        }
        Mode::Ptas => {
            let (inner, inner_ratio) = default_inner(template);
            ptas_solve(instance, template, config.epsilon, &inner, inner_ratio, config.cap)
        }
    }
}
