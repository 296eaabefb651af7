//! Separating menus and unanimity checks for belief aggregation rules.

mod lemma1;
mod unanimity;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::{Belief, Error, Rational, Result};

pub use lemma1::{
    lemma1_construct, verify_lemma1, AgentCheck, AgentConstruction, Lemma1Construction,
    Lemma1Report,
};
pub use unanimity::{
    unanimity_check, Counterexample, GRule, Situation, TieMode, UnanimityOutcome, Violation,
};

/// A vector `a` with `P . a < 0 < Q . a`.
///
/// Uses `a = (Q - P) - c 1` with `c = ((P + Q) / 2) . (Q - P)`, which gives
/// `P . a = -|Q - P|^2 / 2` and `Q . a = |Q - P|^2 / 2`.
pub fn separating_direction(p: &Belief, q: &Belief) -> Result<Vec<Rational>> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    if p == q {
        return Err(Error::IdenticalBeliefs);
    }
    let diff: Vec<Rational> = q.probs().iter().zip(p.probs()).map(|(a, b)| a - b).collect();
    let two = Rational::from_integer(2.into());
    let c: Rational = p
        .probs()
        .iter()
        .zip(q.probs())
        .zip(&diff)
        .map(|((pi, qi), d)| (pi + qi) / &two * d)
        .sum();
    Ok(diff.into_iter().map(|d| d - &c).collect())
}

type AggregatorFn = dyn Fn(&[Belief]) -> Belief + Send + Sync;

/// A belief aggregation rule `F: Delta^N -> Delta`.
#[derive(Clone)]
pub enum AggregatorSpec {
    /// `F(P) = sum_n lambda_n P^n`.
    Linear(Vec<Rational>),
    /// `F(P) = P^n` for the zero-based agent index `n`.
    Dictator(usize),
    /// Arbitrary rule over a fixed number of agents.
    Custom {
        agents: usize,
        rule: Arc<AggregatorFn>,
    },
}

impl fmt::Debug for AggregatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AggregatorSpec::Linear(l) => f.debug_tuple("Linear").field(l).finish(),
            AggregatorSpec::Dictator(n) => f.debug_tuple("Dictator").field(n).finish(),
            AggregatorSpec::Custom { agents, .. } => {
                f.debug_struct("Custom").field("agents", agents).finish()
            }
        }
    }
}

impl AggregatorSpec {
    pub fn linear(lambdas: Vec<Rational>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::EmptyProfile);
        }
        if let Some(l) = lambdas.iter().find(|l| *l < &Rational::zero()) {
            return Err(Error::NegativeWeight(l.clone()));
        }
        let total: Rational = lambdas.iter().sum();
        if total != Rational::from_integer(1.into()) {
            return Err(Error::NotNormalized(total));
        }
        Ok(AggregatorSpec::Linear(lambdas))
    }

    /// Wraps a custom rule, checking `F(P, ..., P) = P` on sampled beliefs.
    pub fn custom<F>(agents: usize, rule: F) -> Result<Self>
    where
        F: Fn(&[Belief]) -> Belief + Send + Sync + 'static,
    {
        if agents == 0 {
            return Err(Error::EmptyProfile);
        }
        let mut rng = crate::sampling::trial_rng(0x5eed, 0);
        for m in 2..=4 {
            let p = crate::sampling::belief(&mut rng, m, 4);
            if rule(&vec![p.clone(); agents]) != p {
                return Err(Error::Aggregator(
                    "custom rule does not map a unanimous profile to the common belief".into(),
                ));
            }
        }
        Ok(AggregatorSpec::Custom {
            agents,
            rule: Arc::new(rule),
        })
    }

    /// Number of agents the rule is defined for, when fixed.
    pub fn agents(&self) -> Option<usize> {
        match self {
            AggregatorSpec::Linear(l) => Some(l.len()),
            AggregatorSpec::Dictator(_) => None,
            AggregatorSpec::Custom { agents, .. } => Some(*agents),
        }
    }

    pub fn apply(&self, beliefs: &[Belief]) -> Result<Belief> {
        match self {
            AggregatorSpec::Linear(lambdas) => {
                if lambdas.len() != beliefs.len() {
                    return Err(Error::LengthMismatch {
                        expected: lambdas.len(),
                        found: beliefs.len(),
                    });
                }
                let profile = crate::BeliefProfile::new(beliefs.to_vec(), lambdas.clone())?;
                Ok(crate::aggregate::ex_post_belief(&profile))
            }
            AggregatorSpec::Dictator(n) => beliefs.get(*n).cloned().ok_or(Error::LengthMismatch {
                expected: n + 1,
                found: beliefs.len(),
            }),
            AggregatorSpec::Custom { agents, rule } => {
                if *agents != beliefs.len() {
                    return Err(Error::LengthMismatch {
                        expected: *agents,
                        found: beliefs.len(),
                    });
                }
                Ok(rule(beliefs))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn dot(a: &[Rational], b: &[Rational]) -> Rational {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn separating_examples() {
        let p = Belief::degenerate(2, 0);
        let q = Belief::degenerate(2, 1);
        let a = separating_direction(&p, &q).unwrap();
        assert_eq!(a, vec![rat(-1, 1), rat(1, 1)]);
        assert_eq!(dot(p.probs(), &a), rat(-1, 1));
        assert_eq!(dot(q.probs(), &a), rat(1, 1));

        let p = Belief::new(vec![rat(1, 2), rat(1, 2)]).unwrap();
        let q = Belief::new(vec![rat(1, 4), rat(3, 4)]).unwrap();
        let a = separating_direction(&p, &q).unwrap();
        assert_eq!(dot(p.probs(), &a), rat(-1, 16));
        assert_eq!(dot(q.probs(), &a), rat(1, 16));

        assert_eq!(separating_direction(&p, &p), Err(Error::IdenticalBeliefs));
    }

    #[test]
    fn aggregator_rules() {
        let p1 = Belief::degenerate(2, 0);
        let p2 = Belief::degenerate(2, 1);
        let lin = AggregatorSpec::linear(vec![rat(1, 4), rat(3, 4)]).unwrap();
        assert_eq!(
            lin.apply(&[p1.clone(), p2.clone()]).unwrap().probs(),
            &[rat(1, 4), rat(3, 4)]
        );
        assert_eq!(AggregatorSpec::Dictator(1).apply(&[p1.clone(), p2.clone()]).unwrap(), p2);
        assert!(AggregatorSpec::linear(vec![rat(1, 2)]).is_err());
    }

    #[test]
    fn custom_rule_must_respect_unanimity() {
        let flip = |b: &[Belief]| {
            let mut v = b[0].probs().to_vec();
            v.reverse();
            Belief::new(v).unwrap()
        };
        assert!(AggregatorSpec::custom(2, flip).is_err());
        let first = |b: &[Belief]| b[0].clone();
        assert!(AggregatorSpec::custom(2, first).is_ok());
    }
}
