use thiserror::Error;

use crate::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("payoff stream must have at least one period")]
    EmptyStream,
    #[error("payoff x_{index} = {value} is negative")]
    NegativePayoff { index: usize, value: Rational },
    #[error("discount grid must contain at least one factor")]
    EmptyGrid,
    #[error("discount factor {0} lies outside [0, 1]")]
    FactorOutOfRange(Rational),
    #[error("discount factors must be strictly decreasing (position {0})")]
    GridNotDescending(usize),
    #[error("probability {0} lies outside [0, 1]")]
    ProbabilityOutOfRange(Rational),
    #[error("probabilities sum to {0}, expected 1")]
    NotNormalized(Rational),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("belief profile must contain at least one belief")]
    EmptyProfile,
    #[error("aggregation weight {0} is negative")]
    NegativeWeight(Rational),
    #[error("weighting parameters must be positive (theta = {}, gamma = {})", .0.0, .0.1)]
    InvalidWeighting(Box<(Rational, Rational)>),
    #[error("point {0} lies outside [0, 1]")]
    OutsideUnitInterval(Rational),
    #[error("division by zero: delta({0}) = 0")]
    ZeroDiscountFactor(usize),
    #[error("menu must contain at least one project")]
    EmptyMenu,
    #[error("menu contains the same project twice (positions {0} and {1})")]
    DuplicateProject(usize, usize),
    #[error("project is not a member of the menu")]
    NotInMenu,
    #[error("tie-breaker must have at least one piece")]
    EmptyTieBreaker,
    #[error("tie-breaker piece [{}, {}] is not a nondegenerate subinterval of [0, 1]", .0.0, .0.1)]
    BadPiece(Box<(Rational, Rational)>),
    #[error("tie-breaker piece mass {0} must be positive")]
    NonPositiveMass(Rational),
    #[error("tie-breaker pieces overlap")]
    OverlappingPieces,
    #[error("beliefs are identical; no separating direction exists")]
    IdenticalBeliefs,
    #[error("agent {0} has identical beliefs in both profiles")]
    IdenticalAgentBeliefs(usize),
    #[error("construction needs factors strictly inside (0, 1) and at least two of them")]
    GridNotInterior,
    #[error("constructed payoff y^{0} has a negative coefficient")]
    NegativeConstructedPayoff(usize),
    #[error("aggregator: {0}")]
    Aggregator(String),
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
}
