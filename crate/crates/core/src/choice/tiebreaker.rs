use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::{Error, Rational, Result};

/// One uniform component: `mass` spread evenly over `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub lo: Rational,
    pub hi: Rational,
    pub mass: Rational,
}

/// A nonatomic probability measure on `[0, 1]` given as a finite mixture
/// of uniform distributions on intervals with disjoint interiors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TieBreaker {
    pieces: Vec<Piece>,
}

impl TieBreaker {
    pub fn new(mut pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptyTieBreaker);
        }
        for p in &pieces {
            if p.lo.is_negative() || p.hi > Rational::one() || p.lo >= p.hi {
                return Err(Error::BadPiece(Box::new((p.lo.clone(), p.hi.clone()))));
            }
            if !p.mass.is_positive() {
                return Err(Error::NonPositiveMass(p.mass.clone()));
            }
        }
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo));
        if pieces.windows(2).any(|w| w[0].hi > w[1].lo) {
            return Err(Error::OverlappingPieces);
        }
        let total: Rational = pieces.iter().map(|p| &p.mass).sum();
        if !total.is_one() {
            return Err(Error::NotNormalized(total));
        }
        Ok(TieBreaker { pieces })
    }

    /// Lebesgue measure on `[0, 1]`.
    pub fn uniform() -> Self {
        TieBreaker {
            pieces: vec![Piece {
                lo: Rational::zero(),
                hi: Rational::one(),
                mass: Rational::one(),
            }],
        }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Cumulative distribution function.
    pub fn cdf(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for p in &self.pieces {
            if *x >= p.hi {
                acc += &p.mass;
            } else if *x > p.lo {
                acc += &p.mass * (x - &p.lo) / (&p.hi - &p.lo);
            } else {
                break;
            }
        }
        acc
    }

    /// Measure of `[a, b]`; zero when `b <= a`.
    pub fn measure(&self, a: &Rational, b: &Rational) -> Rational {
        if b <= a {
            return Rational::zero();
        }
        self.cdf(b) - self.cdf(a)
    }

    /// Largest density, the Lipschitz constant of the CDF.
    pub fn max_density(&self) -> Rational {
        self.pieces
            .iter()
            .map(|p| &p.mass / (&p.hi - &p.lo))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Every rational breakpoint of the CDF.
    pub fn endpoints(&self) -> Vec<Rational> {
        self.pieces
            .iter()
            .flat_map(|p| [p.lo.clone(), p.hi.clone()])
            .collect()
    }

    /// Weighted mixture `sum_k w_k * tb_k`, re-expressed on disjoint pieces.
    /// Weights must be nonnegative and sum to one.
    pub fn mixture(components: &[(Rational, &TieBreaker)]) -> Result<TieBreaker> {
        let mut cuts: Vec<Rational> = components
            .iter()
            .flat_map(|(_, tb)| tb.endpoints())
            .collect();
        cuts.sort();
        cuts.dedup();
        let pieces = cuts
            .windows(2)
            .filter_map(|w| {
                let mass: Rational = components
                    .iter()
                    .map(|(wk, tb)| wk * tb.measure(&w[0], &w[1]))
                    .sum();
                mass.is_positive().then(|| Piece {
                    lo: w[0].clone(),
                    hi: w[1].clone(),
                    mass,
                })
            })
            .collect();
        TieBreaker::new(pieces)
    }

    /// Draws a point, in floating point.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let last = self.pieces.len() - 1;
        for (i, p) in self.pieces.iter().enumerate() {
            acc += p.mass.to_f64().unwrap_or(0.0);
            if u < acc || i == last {
                let lo = p.lo.to_f64().unwrap_or(0.0);
                let hi = p.hi.to_f64().unwrap_or(1.0);
                return lo + (hi - lo) * rng.gen::<f64>();
            }
        }
        unreachable!("tie-breaker has at least one piece")
    }
}
