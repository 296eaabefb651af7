use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cone::{cone_at, maximizer_set, tb_measure};
use super::{Menu, TieBreaker};
use crate::poly::default_epsilon;
use crate::{Belief, DiscountGrid, PayoffStream, Rational, Result};

/// A probability known exactly (`lo == hi`) or through a guaranteed
/// enclosure `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probability {
    pub lo: Rational,
    pub hi: Rational,
}

impl Probability {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Probability { lo, hi }
    }

    pub fn exact(p: Rational) -> Self {
        Probability {
            lo: p.clone(),
            hi: p,
        }
    }

    pub fn zero() -> Self {
        Probability::exact(Rational::zero())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_zero(&self) -> bool {
        self.hi.is_zero()
    }

    pub fn value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn contains(&self, r: &Rational) -> bool {
        self.lo <= *r && *r <= self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo_f64() + self.hi_f64())
    }

    /// Scales by a nonnegative factor.
    pub fn scale(&self, k: &Rational) -> Probability {
        debug_assert!(!k.is_negative());
        Probability::new(&self.lo * k, &self.hi * k)
    }
}

impl Add for &Probability {
    type Output = Probability;
    fn add(self, rhs: &Probability) -> Probability {
        Probability::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Choice probabilities over the projects of a menu, in menu order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceDistribution {
    menu: Menu,
    probs: Vec<Probability>,
}

impl ChoiceDistribution {
    pub fn menu(&self) -> &Menu {
        &self.menu
    }

    pub fn probabilities(&self) -> &[Probability] {
        &self.probs
    }

    pub fn get(&self, x: &PayoffStream) -> Option<&Probability> {
        self.menu.position(x).map(|i| &self.probs[i])
    }

    pub fn is_exact(&self) -> bool {
        self.probs.iter().all(Probability::is_exact)
    }

    pub fn total(&self) -> Probability {
        self.probs.iter().fold(Probability::zero(), |acc, p| &acc + p)
    }
}

/// The random choice rule induced by belief `p` over `grid` and the
/// tie-breaker `tb`.
///
/// The first draw picks an atom `beta_m`; ties among the maximizers at
/// `beta_m` are resolved by a second, nonatomic draw from `tb`, so each
/// tied project wins with the tie-breaker measure of its normal cone within
/// the maximizer set.
pub fn rcr(grid: &DiscountGrid, p: &Belief, tb: &TieBreaker, menu: &Menu) -> Result<ChoiceDistribution> {
    rcr_with(grid, p, tb, menu, &default_epsilon())
}

/// [`rcr`] with an explicit root-isolation width.
pub fn rcr_with(
    grid: &DiscountGrid,
    p: &Belief,
    tb: &TieBreaker,
    menu: &Menu,
    eps: &Rational,
) -> Result<ChoiceDistribution> {
    p.check_aligned(grid)?;
    let mut hints: Vec<Rational> = grid.factors().to_vec();
    hints.extend(tb.endpoints());
    hints.sort();
    hints.dedup();

    let mut probs = vec![Probability::zero(); menu.len()];
    let mut tie_cache: HashMap<Vec<usize>, Vec<Probability>> = HashMap::new();
    for (beta, pm) in grid.factors().iter().zip(p.probs()) {
        if pm.is_zero() {
            continue;
        }
        let winners = maximizer_set(beta, menu);
        if let [only] = winners[..] {
            probs[only] = &probs[only] + &Probability::exact(pm.clone());
            continue;
        }
        let shares = tie_cache.entry(winners.clone()).or_insert_with(|| {
            let sub = menu.subset(&winners);
            (0..sub.len())
                .map(|k| tb_measure(tb, &cone_at(&sub, k, eps, &hints)))
                .collect()
        });
        for (&i, share) in winners.iter().zip(shares.iter()) {
            probs[i] = &probs[i] + &share.scale(pm);
        }
    }
    Ok(ChoiceDistribution {
        menu: menu.clone(),
        probs,
    })
}

/// Empirical choice frequencies from direct simulation of the two-stage
/// draw: an atom from `p`, then a tie-breaking factor from `tb`.
///
/// Maximizer sets at the atoms are exact; the second-stage comparison runs
/// in `f64`, where ties have probability zero.
pub fn monte_carlo_rcr(
    grid: &DiscountGrid,
    p: &Belief,
    tb: &TieBreaker,
    menu: &Menu,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    p.check_aligned(grid)?;
    let winners: Vec<Vec<usize>> = grid
        .factors()
        .iter()
        .map(|b| maximizer_set(b, menu))
        .collect();
    let payoffs: Vec<Vec<f64>> = menu
        .projects()
        .iter()
        .map(|x| x.payoffs().iter().map(|v| v.to_f64().unwrap_or(0.0)).collect())
        .collect();
    let cumulative: Vec<f64> = p
        .probs()
        .iter()
        .scan(Rational::zero(), |acc, pm| {
            *acc += pm;
            Some(acc.to_f64().unwrap_or(1.0))
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0usize; menu.len()];
    for _ in 0..samples {
        let u: f64 = rng.gen();
        let m = cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(cumulative.len() - 1);
        let chosen = match winners[m][..] {
            [only] => only,
            _ => {
                let b = tb.sample(&mut rng);
                let value = |i: usize| payoffs[i].iter().rev().fold(0.0, |acc, v| acc * b + v);
                *winners[m]
                    .iter()
                    .max_by(|&&i, &&j| value(i).total_cmp(&value(j)))
                    .unwrap()
            }
        };
        counts[chosen] += 1;
    }
    Ok(counts
        .into_iter()
        .map(|c| c as f64 / samples as f64)
        .collect())
}
