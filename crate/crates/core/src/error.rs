use thiserror::Error;

use crate::rational::Rational;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {{{u}, {v}}} has endpoint {missing} outside the vertex set")]
    DanglingEdge { u: usize, v: usize, missing: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(Rational),

    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    EpsilonOutOfRange(Rational),

    #[error("probability must lie in [0, 1], got {0}")]
    InvalidProbability(Rational),

    #[error("probability denominator {0} does not fit in 64 bits")]
    ProbabilityTooFine(Rational),

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("{0} is not a subset of {1}")]
    NotSubset(String, String),

    #[error("set is empty")]
    EmptySet,

    #[error("part of size {size} exceeds the exact checker cap {cap}; use a sampling estimate or reduce the instance")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("partition is already epsilon-regular")]
    AlreadyRegular,

    #[error("refinement exceeded the iteration budget of {0} rounds")]
    IterationBudgetExceeded(u64),

    #[error("lemma hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("set {0:?} is not contained in 0..{1}")]
    OutOfRange(Vec<usize>, usize),

    #[error("N must be at least 1")]
    ZeroN,

    #[error("{what} {got} exceeds the exhaustive cap {cap}")]
    CapExceeded { what: &'static str, got: usize, cap: usize },

    #[error("graph does not have unique triangles: edge {{{0}, {1}}} lies in {2} triangles")]
    NotUniqueTriangles(usize, usize, usize),

    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake-case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DanglingEdge { .. } => "dangling_edge",
            Error::SelfLoop(_) => "self_loop",
            Error::EmptyGraph => "empty_graph",
            Error::NonPositiveEpsilon(_) => "non_positive_epsilon",
            Error::EpsilonOutOfRange(_) => "epsilon_out_of_range",
            Error::InvalidProbability(_) => "invalid_probability",
            Error::ProbabilityTooFine(_) => "probability_too_fine",
            Error::NotAPartition(_) => "not_a_partition",
            Error::NotSubset(..) => "not_subset",
            Error::EmptySet => "empty_set",
            Error::SizeCapExceeded { .. } => "size_cap_exceeded",
            Error::AlreadyRegular => "already_regular",
            Error::IterationBudgetExceeded(_) => "iteration_budget_exceeded",
            Error::HypothesisFailed(_) => "hypothesis_failed",
            Error::OutOfRange(..) => "out_of_range",
            Error::ZeroN => "zero_n",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::NotUniqueTriangles(..) => "not_unique_triangles",
            Error::InvariantViolated(_) => "invariant_violated",
            Error::Parse { .. } => "parse",
            Error::BadRational(_) => "bad_rational",
        }
    }
}
