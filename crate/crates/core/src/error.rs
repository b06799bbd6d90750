use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    /// The instance has fewer elements than the template, so no surjective map exists.
    #[error("no surjective assignment: instance has {instance_size} elements, template has {template_size}")]
    NoSurjection {
        instance_size: usize,
        template_size: usize,
    },

    /// The repair step found no element that can be moved onto a missing value.
    #[error("no solution: no element shares its value with another element")]
    NoSolution,

    #[error("search space {template_size}^{instance_size} exceeds the evaluation cap {cap}")]
    CapExceeded {
        template_size: usize,
        instance_size: usize,
        cap: u64,
    },

    #[error(
        "instance size {instance_size} is within the exact-solve cutoff N0 = {cutoff}, \
         but {template_size}^{instance_size} exceeds the evaluation cap {cap}; \
         raise --epsilon (lowers N0) or raise --cap"
    )]
    CutoffCapExceeded {
        cutoff: u64,
        template_size: usize,
        instance_size: usize,
        cap: u64,
    },

    #[error("template is not Boolean (domain size {0})")]
    NotBoolean(usize),

    #[error("template is not 2-monotone: relation `{0}` has no (P, Q) witness")]
    NotTwoMonotone(String),

    /// Constraint-only anchoring found no pair forcing both values.
    #[error("no feasible anchor pair: {0}")]
    NoAnchorPair(String),

    #[error("invalid anchor: {0}")]
    InvalidAnchor(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// True for the errors that mean "no surjective answer exists".
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::NoSurjection { .. } | Error::NoSolution | Error::NoAnchorPair(_)
        )
    }

    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::CutoffCapExceeded { .. }
        )
    }
}
