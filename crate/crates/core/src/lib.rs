//! Social discounting with heterogeneous random discount factors.
//!
//! Individuals hold a probability distribution over a finite grid of
//! exponential discount factors and evaluate payoff streams with
//! rank-dependent utility. This crate computes the planner's discount
//! factors and discount-rate term structures under the ex ante and ex post
//! aggregation routes, and implements the lexicographic random choice rule
//! (normal cones, nonatomic tie-breakers) together with the constructive
//! separating-menu procedure used to test unanimity conditions.
//!
//! Every quantity that decides a tie or a maximizer set is an exact
//! [`Rational`]. Only nonlinear probability weighting is evaluated in
//! floating point, surfaced through [`Scalar::Approx`].

pub mod aggregate;
pub mod algebraic;
pub mod choice;
mod error;
pub mod pareto;
pub mod poly;
pub mod rdu;
pub mod sampling;
mod scalar;
mod types;
pub mod weighting;

pub use aggregate::{
    alpha_coefficients, consistency_gap, delta_at, delta_curve, ex_post_belief, rate_at,
    rate_curve, term_structure, Mode, TermStructure,
};
pub use algebraic::AlgebraicPoint;
pub use choice::{
    maximizer_set, normal_cone, rcr, tb_measure, ChoiceDistribution, IntervalUnion, Menu,
    Probability, TieBreaker,
};
pub use error::{Error, Result};
pub use pareto::{
    lemma1_construct, separating_direction, unanimity_check, verify_lemma1, AggregatorSpec,
    Lemma1Construction, Lemma1Report, TieMode, UnanimityOutcome,
};
pub use poly::{diff_polynomial, isolate_roots, Poly};
pub use rdu::{decision_weights, dot_discount, rdu_value};
pub use scalar::Scalar;
pub use types::{Belief, BeliefProfile, DiscountGrid, PayoffStream};
pub use weighting::{weight_eval, WeightingSpec};

/// Exact rational number used for payoffs, probabilities and factors.
pub type Rational = num_rational::BigRational;

/// Builds `num / den` as a [`Rational`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Builds an integer-valued [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
