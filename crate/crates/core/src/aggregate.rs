//! Ex ante and ex post social discounting.
//!
//! Every social discount curve here is a mixture of exponentials
//! `delta(t) = sum_m alpha_m beta_m^t` with `alpha` a probability vector. The
//! three modes differ only in how `alpha` is formed from the individuals'
//! beliefs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::rdu::decision_weights;
use crate::{Belief, BeliefProfile, DiscountGrid, Error, Rational, Result, Scalar, WeightingSpec};

/// Which social discount curve to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Expected utility everywhere (`k = e`).
    Expected,
    /// Weighted average of the individuals' rank-dependent discount curves.
    ExAnte,
    /// Rank-dependent evaluation of the linearly aggregated belief.
    ExPost,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Expected, Mode::ExAnte, Mode::ExPost];

    pub fn tag(self) -> char {
        match self {
            Mode::Expected => 'e',
            Mode::ExAnte => 'a',
            Mode::ExPost => 'p',
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "e" => Ok(Mode::Expected),
            "a" => Ok(Mode::ExAnte),
            "p" => Ok(Mode::ExPost),
            other => Err(format!("unknown mode `{other}` (expected e, a or p)")),
        }
    }
}

/// Discount factors `delta(0..=T)` and per-period rates `eta(0..T)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TermStructure {
    pub mode: Mode,
    pub deltas: Vec<Scalar>,
    pub rates: Vec<Scalar>,
}

/// The planner's belief under the linear rule, `sum_n lambda_n P^n`.
pub fn ex_post_belief(profile: &BeliefProfile) -> Belief {
    let mut probs = vec![Rational::zero(); profile.atoms()];
    for (belief, lambda) in profile.beliefs().iter().zip(profile.lambdas()) {
        for (acc, p) in probs.iter_mut().zip(belief.probs()) {
            *acc += lambda * p;
        }
    }
    Belief::new(probs).expect("a convex combination of beliefs is a belief")
}

/// Mixture weights `alpha^k` of the social discount curve for `mode`.
///
/// `w_individuals` holds one weighting per agent; `w_social` is the
/// planner's and only matters for [`Mode::ExPost`].
pub fn alpha_coefficients(
    mode: Mode,
    profile: &BeliefProfile,
    w_individuals: &[WeightingSpec],
    w_social: &WeightingSpec,
) -> Result<Vec<Scalar>> {
    if w_individuals.len() != profile.len() {
        return Err(Error::LengthMismatch {
            expected: profile.len(),
            found: w_individuals.len(),
        });
    }
    let m = profile.atoms();
    Ok(match mode {
        Mode::Expected => ex_post_belief(profile)
            .probs()
            .iter()
            .cloned()
            .map(Scalar::Exact)
            .collect(),
        Mode::ExAnte => {
            let per_agent: Vec<Vec<Scalar>> = profile
                .beliefs()
                .iter()
                .zip(w_individuals)
                .map(|(b, w)| decision_weights(b, w))
                .collect();
            (0..m)
                .map(|i| {
                    let terms: Vec<Scalar> = per_agent
                        .iter()
                        .zip(profile.lambdas())
                        .map(|(dw, l)| &dw[i] * &Scalar::Exact(l.clone()))
                        .collect();
                    Scalar::sum(&terms)
                })
                .collect()
        }
        Mode::ExPost => decision_weights(&ex_post_belief(profile), w_social),
    })
}

fn check_alpha(alpha: &[Scalar], grid: &DiscountGrid) -> Result<()> {
    if alpha.len() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            found: alpha.len(),
        });
    }
    Ok(())
}

fn as_exact(alpha: &[Scalar]) -> Option<Vec<Rational>> {
    alpha.iter().map(|a| a.as_exact().cloned()).collect()
}

/// `delta(t) = sum_m alpha_m beta_m^t` rewritten over integers as
/// `sum_m weights_m bases_m^t / (scale step^t)`.
///
/// With `beta_m = n_m / d_m` and `step = lcm(d_m)`, the common denominator of
/// the `beta_m^t` is `step^t`, so each `delta(t)` needs one reduction instead
/// of one per term.
struct IntegerMixture {
    weights: Vec<BigInt>,
    bases: Vec<BigInt>,
    scale: BigInt,
    step: BigInt,
}

impl IntegerMixture {
    fn new(alpha: &[Rational], grid: &DiscountGrid) -> Self {
        let scale = alpha
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let step = grid
            .factors()
            .iter()
            .fold(BigInt::one(), |acc, b| acc.lcm(b.denom()));
        IntegerMixture {
            weights: alpha.iter().map(|a| a.numer() * (&scale / a.denom())).collect(),
            bases: grid
                .factors()
                .iter()
                .map(|b| b.numer() * (&step / b.denom()))
                .collect(),
            scale,
            step,
        }
    }
}

/// `delta(t) = sum_m alpha_m beta_m^t` for `t = 0..=horizon`.
///
/// Exact when `alpha` is exact; otherwise each term is formed in `f64` and
/// summed with compensation.
pub fn delta_curve(alpha: &[Scalar], grid: &DiscountGrid, horizon: usize) -> Result<Vec<Scalar>> {
    check_alpha(alpha, grid)?;
    if let Some(exact) = as_exact(alpha) {
        let mix = IntegerMixture::new(&exact, grid);
        let mut powers = mix.weights.clone();
        let mut denom = mix.scale.clone();
        let mut out = Vec::with_capacity(horizon + 1);
        for t in 0..=horizon {
            if t > 0 {
                for (pw, c) in powers.iter_mut().zip(&mix.bases) {
                    *pw *= c;
                }
                denom *= &mix.step;
            }
            let numer: BigInt = powers.iter().sum();
            out.push(Scalar::Exact(Rational::new(numer, denom.clone())));
        }
        return Ok(out);
    }
    let weights: Vec<f64> = alpha.iter().map(Scalar::to_f64).collect();
    let betas: Vec<f64> = grid
        .factors()
        .iter()
        .map(|b| b.to_f64().unwrap_or(f64::NAN))
        .collect();
    Ok((0..=horizon)
        .map(|t| {
            let terms: Vec<Scalar> = weights
                .iter()
                .zip(&betas)
                .map(|(a, b)| Scalar::Approx(a * b.powi(t as i32)))
                .collect();
            Scalar::sum(&terms)
        })
        .collect())
}

/// Single value `delta(t)`, using fast exponentiation in the exact case.
pub fn delta_at(alpha: &[Scalar], grid: &DiscountGrid, t: u64) -> Result<Scalar> {
    check_alpha(alpha, grid)?;
    if let Some(exact) = as_exact(alpha) {
        let mix = IntegerMixture::new(&exact, grid);
        let numer: BigInt = mix
            .weights
            .iter()
            .zip(&mix.bases)
            .map(|(a, c)| a * Pow::pow(c, t))
            .sum();
        let denom = mix.scale * Pow::pow(&mix.step, t);
        return Ok(Scalar::Exact(Rational::new(numer, denom)));
    }
    let terms: Vec<Scalar> = alpha
        .iter()
        .zip(grid.factors())
        .map(|(a, b)| Scalar::Approx(a.to_f64() * b.to_f64().unwrap_or(f64::NAN).powf(t as f64)))
        .collect();
    Ok(Scalar::sum(&terms))
}

/// `eta(t) = delta(t) / delta(t + 1) - 1` for every consecutive pair.
pub fn rate_curve(deltas: &[Scalar]) -> Result<Vec<Scalar>> {
    deltas
        .windows(2)
        .enumerate()
        .map(|(t, w)| {
            if w[1].is_zero() {
                return Err(Error::ZeroDiscountFactor(t + 1));
            }
            Ok(&(&w[0] / &w[1]) - &Scalar::one())
        })
        .collect()
}

/// Single rate `eta(t)`, computed from [`delta_at`].
pub fn rate_at(alpha: &[Scalar], grid: &DiscountGrid, t: u64) -> Result<Scalar> {
    let d0 = delta_at(alpha, grid, t)?;
    let d1 = delta_at(alpha, grid, t + 1)?;
    if d1.is_zero() {
        return Err(Error::ZeroDiscountFactor(t as usize + 1));
    }
    Ok(&(&d0 / &d1) - &Scalar::one())
}

/// Builds the full term structure for one mode.
pub fn term_structure(
    mode: Mode,
    profile: &BeliefProfile,
    w_individuals: &[WeightingSpec],
    w_social: &WeightingSpec,
    grid: &DiscountGrid,
    horizon: usize,
) -> Result<TermStructure> {
    let alpha = alpha_coefficients(mode, profile, w_individuals, w_social)?;
    let deltas = delta_curve(&alpha, grid, horizon)?;
    let rates = rate_curve(&deltas)?;
    Ok(TermStructure {
        mode,
        deltas,
        rates,
    })
}

/// `max_{t <= horizon} |delta_a(t) - delta_p(t)|`; zero exactly when every
/// weighting is the identity.
pub fn consistency_gap(
    profile: &BeliefProfile,
    w_individuals: &[WeightingSpec],
    w_social: &WeightingSpec,
    grid: &DiscountGrid,
    horizon: usize,
) -> Result<Scalar> {
    let a = alpha_coefficients(Mode::ExAnte, profile, w_individuals, w_social)?;
    let p = alpha_coefficients(Mode::ExPost, profile, w_individuals, w_social)?;
    let da = delta_curve(&a, grid, horizon)?;
    let dp = delta_curve(&p, grid, horizon)?;
    Ok(da
        .iter()
        .zip(&dp)
        .map(|(x, y)| (x - y).abs())
        .fold(Scalar::zero(), Scalar::max))
}

/// `1 / beta_plus - 1`, the long-run rate, where `beta_plus` is the largest
/// factor carrying positive weight. `None` if that factor is zero.
pub fn limit_rate(alpha: &[Scalar], grid: &DiscountGrid) -> Option<Rational> {
    let beta = alpha
        .iter()
        .zip(grid.factors())
        .find(|(a, _)| a.to_f64() > 0.0)
        .map(|(_, b)| b)?;
    if beta.is_zero() {
        return None;
    }
    Some(beta.recip() - Rational::one())
}
