use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::approx::RatioBound;
use crate::error::Error;
use crate::structure::Assignment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "exact-sur")]
    ExactSur,
    #[serde(rename = "mincut")]
    MinCut,
    #[serde(rename = "approx-random")]
    ApproxRandom,
    #[serde(rename = "approx-seeded")]
    ApproxSeeded,
    #[serde(rename = "approx2")]
    Approx2,
    #[serde(rename = "ptas")]
    Ptas,
}

impl Mode {
    pub const ALL: [Mode; 7] = [
        Mode::Exact,
        Mode::ExactSur,
        Mode::MinCut,
        Mode::ApproxRandom,
        Mode::ApproxSeeded,
        Mode::Approx2,
        Mode::Ptas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::ExactSur => "exact-sur",
            Mode::MinCut => "mincut",
            Mode::ApproxRandom => "approx-random",
            Mode::ApproxSeeded => "approx-seeded",
            Mode::Approx2 => "approx2",
            Mode::Ptas => "ptas",
        }
    }

    /// Whether the mode solves the surjective problem.
    pub fn is_surjective(self) -> bool {
        !matches!(self, Mode::Exact | Mode::ApproxRandom)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown mode `{s}`")))
    }
}

/// Which branch the cutoff-based scheme took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Exhaustive,
    Repair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub assignment: Assignment,
    pub value: usize,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub guarantee: Option<RatioBound>,
    /// Candidate assignments, anchor pairs or choice sequences examined.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub choices_enumerated: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cutoff: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub branch: Option<Branch>,
}

impl SolveReport {
    pub fn new(assignment: Assignment, value: usize, mode: Mode) -> Self {
        Self {
            assignment,
            value,
            mode,
            seed: None,
            guarantee: None,
            choices_enumerated: None,
            cutoff: None,
            branch: None,
        }
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_guarantee(mut self, guarantee: RatioBound) -> Self {
        self.guarantee = Some(guarantee);
        self
    }

    pub fn with_choices(mut self, choices: u64) -> Self {
        self.choices_enumerated = Some(choices);
        self
    }
}
