use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

/// A project: nonnegative payoffs `x_0, ..., x_T` over a finite horizon.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PayoffStream(Vec<Rational>);

impl PayoffStream {
    pub fn new(payoffs: Vec<Rational>) -> Result<Self> {
        if payoffs.is_empty() {
            return Err(Error::EmptyStream);
        }
        if let Some((index, value)) = payoffs.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::NegativePayoff {
                index,
                value: value.clone(),
            });
        }
        Ok(PayoffStream(payoffs))
    }

    pub fn payoffs(&self) -> &[Rational] {
        &self.0
    }

    /// Last period index `T`.
    pub fn horizon(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, t: usize) -> Rational {
        self.0.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    /// Same project up to trailing zero padding.
    pub fn same_project(&self, other: &PayoffStream) -> bool {
        let n = self.0.len().max(other.0.len());
        (0..n).all(|t| self.get(t) == other.get(t))
    }

    /// Convex mixture `alpha * self + (1 - alpha) * other`, padded to the
    /// longer horizon.
    pub fn mix(&self, other: &PayoffStream, alpha: &Rational) -> PayoffStream {
        let n = self.0.len().max(other.0.len());
        let beta = Rational::one() - alpha;
        PayoffStream(
            (0..n)
                .map(|t| alpha * self.get(t) + &beta * other.get(t))
                .collect(),
        )
    }
}

/// Candidate discount factors `1 >= b_1 > b_2 > ... > b_M >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscountGrid(Vec<Rational>);

impl DiscountGrid {
    pub fn new(factors: Vec<Rational>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyGrid);
        }
        for b in &factors {
            if b.is_negative() || *b > Rational::one() {
                return Err(Error::FactorOutOfRange(b.clone()));
            }
        }
        if let Some(i) = factors.windows(2).position(|w| w[0] <= w[1]) {
            return Err(Error::GridNotDescending(i + 1));
        }
        Ok(DiscountGrid(factors))
    }

    pub fn factors(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A probability vector aligned with a [`DiscountGrid`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Belief(Vec<Rational>);

impl Belief {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                found: 0,
            });
        }
        for p in &probs {
            if p.is_negative() || *p > Rational::one() {
                return Err(Error::ProbabilityOutOfRange(p.clone()));
            }
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::NotNormalized(total));
        }
        Ok(Belief(probs))
    }

    /// Point mass on atom `index` of an `len`-atom grid.
    pub fn degenerate(len: usize, index: usize) -> Self {
        let mut probs = vec![Rational::zero(); len];
        probs[index] = Rational::one();
        Belief(probs)
    }

    pub fn probs(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot(&self, v: &[Rational]) -> Rational {
        self.0.iter().zip(v).map(|(p, x)| p * x).sum()
    }

    pub(crate) fn check_aligned(&self, grid: &DiscountGrid) -> Result<()> {
        if self.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: self.len(),
            });
        }
        Ok(())
    }
}

/// Beliefs of `N` individuals plus the planner's aggregation weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeliefProfile {
    beliefs: Vec<Belief>,
    lambdas: Vec<Rational>,
}

impl BeliefProfile {
    pub fn new(beliefs: Vec<Belief>, lambdas: Vec<Rational>) -> Result<Self> {
        if beliefs.is_empty() {
            return Err(Error::EmptyProfile);
        }
        if lambdas.len() != beliefs.len() {
            return Err(Error::LengthMismatch {
                expected: beliefs.len(),
                found: lambdas.len(),
            });
        }
        let m = beliefs[0].len();
        if let Some(b) = beliefs.iter().find(|b| b.len() != m) {
            return Err(Error::LengthMismatch {
                expected: m,
                found: b.len(),
            });
        }
        if let Some(l) = lambdas.iter().find(|l| l.is_negative()) {
            return Err(Error::NegativeWeight(l.clone()));
        }
        let total: Rational = lambdas.iter().sum();
        if !total.is_one() {
            return Err(Error::NotNormalized(total));
        }
        Ok(BeliefProfile { beliefs, lambdas })
    }

    /// Equal weights `1/N`.
    pub fn uniform(beliefs: Vec<Belief>) -> Result<Self> {
        let n = beliefs.len().max(1) as i64;
        let lambdas = vec![Rational::new(1.into(), n.into()); beliefs.len()];
        Self::new(beliefs, lambdas)
    }

    pub fn beliefs(&self) -> &[Belief] {
        &self.beliefs
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    pub fn len(&self) -> usize {
        self.beliefs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beliefs.is_empty()
    }

    /// Number of grid atoms the beliefs are defined over.
    pub fn atoms(&self) -> usize {
        self.beliefs[0].len()
    }
}
