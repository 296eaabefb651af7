//! Discounted utility and rank-dependent evaluation of payoff streams.

use num_traits::Zero;

use crate::{Belief, DiscountGrid, PayoffStream, Rational, Result, Scalar, WeightingSpec};

/// `sum_t beta^t x_t`, exactly, with `0^0 = 1`.
pub fn dot_discount(beta: &Rational, x: &PayoffStream) -> Rational {
    // Horner from the last period backwards.
    x.payoffs()
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, xt| acc * beta + xt)
}

/// Rank-dependent decision weights `w(C_m) - w(C_{m-1})`, where `C_m` is the
/// cumulative probability of the `m` largest discount factors.
///
/// Because every payoff is nonnegative, a larger factor always yields a
/// (weakly) larger discounted value, so the grid order is the outcome order.
///
/// Floating-point values of `w` are lifted to the dyadic rationals they
/// denote before differencing, so the weights are exact rationals that sum
/// to exactly one.
pub fn decision_weights(p: &Belief, w: &WeightingSpec) -> Vec<Scalar> {
    let mut cumulative = Rational::zero();
    let mut prev = Rational::zero();
    let mut weights = Vec::with_capacity(p.len());
    for pm in p.probs() {
        if pm.is_zero() {
            weights.push(Scalar::zero());
            continue;
        }
        cumulative += pm;
        let cur = match w
            .eval(&cumulative)
            .expect("cumulative probability of a belief lies in [0, 1]")
        {
            Scalar::Exact(r) => r,
            Scalar::Approx(f) => Rational::from_float(f).expect("weighting values are finite"),
        };
        weights.push(Scalar::Exact(&cur - &prev));
        prev = cur;
    }
    weights
}

/// Rank-dependent utility of `x` for an individual with belief `p` over
/// `grid` and weighting function `w`.
pub fn rdu_value(
    grid: &DiscountGrid,
    p: &Belief,
    w: &WeightingSpec,
    x: &PayoffStream,
) -> Result<Scalar> {
    p.check_aligned(grid)?;
    let terms: Vec<Scalar> = decision_weights(p, w)
        .iter()
        .zip(grid.factors())
        .map(|(dw, beta)| dw * &Scalar::Exact(dot_discount(beta, x)))
        .collect();
    Ok(Scalar::sum(&terms))
}
