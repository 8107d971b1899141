use thiserror::Error;

use crate::boxes::DyadicBox;

/// Errors raised by the combinatorial core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("colour count {0} is not supported (expected 1, 2 or 3)")]
    InvalidColourCount(u8),
    #[error("colour {colour} is out of range for s={s}")]
    InvalidColour { colour: u8, s: u8 },
    #[error("colour counts differ ({0} vs {1})")]
    ColourCountMismatch(u8, u8),
    #[error("box {0} is not in the pattern")]
    BoxNotInPattern(DyadicBox),
    #[error("address depth {depth} exceeds the cap {cap}")]
    DepthCapExceeded { depth: usize, cap: usize },
    #[error("boxes are not oriented siblings in the requested colour")]
    NotSiblings,
    #[error("boxes do not tile the frame")]
    NotATiling,
    #[error("the patterns have no common lower bound")]
    NoCommonLowerBound,
    #[error("budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("below-sets live over different base patterns")]
    BaseMismatch,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("contractions are not pairwise disjoint")]
    NotDisjoint,
    #[error("frame partition is not reachable by expansions")]
    NonHierarchicalFrame,
    #[error("sizes differ ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("map is not a bijection")]
    NotBijective,
    #[error("box {0} does not lie below the domain")]
    BoxNotBelowDomain(DyadicBox),
    #[error("component does not live in a box-world fragment")]
    NotBoxWorld,
    #[error("no eligible edge in the contraction graph")]
    NoEdge,
    #[error("star-connectivity witness search exceeded its budget of {0}")]
    StarSearchBudgetExceeded(usize),
    #[error("certificate violation: {0}")]
    CertificateViolation(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
