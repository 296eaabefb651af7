//! Seeded generators of dyadic-rational instances.
//!
//! Every draw is a dyadic rational `k / 2^b`, so downstream arithmetic stays
//! exact. Each trial gets its own ChaCha stream derived from
//! `(seed, trial index)`, which keeps trials reproducible and independent of
//! evaluation order.

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::choice::{Menu, Piece, TieBreaker};
use crate::{Belief, DiscountGrid, PayoffStream, Rational};

/// Independent generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn dyadic(k: u64, bits: u32) -> Rational {
    Rational::new(BigInt::from(k), BigInt::from(1u64 << bits))
}

/// `m` distinct factors `k / 64` strictly inside `(0, 1)`, descending.
pub fn grid<R: Rng>(rng: &mut R, m: usize) -> DiscountGrid {
    let mut ks: Vec<usize> = sample(rng, 63, m).into_iter().map(|k| k + 1).collect();
    ks.sort_unstable_by(|a, b| b.cmp(a));
    DiscountGrid::new(ks.into_iter().map(|k| dyadic(k as u64, 6)).collect())
        .expect("distinct factors in (0, 1)")
}

/// A belief over `m` atoms with probabilities in multiples of `2^-bits`.
pub fn belief<R: Rng>(rng: &mut R, m: usize, bits: u32) -> Belief {
    let total = 1u64 << bits;
    let mut cuts: Vec<u64> = (0..m - 1).map(|_| rng.gen_range(0..=total)).collect();
    cuts.push(0);
    cuts.push(total);
    cuts.sort_unstable();
    Belief::new(cuts.windows(2).map(|w| dyadic(w[1] - w[0], bits)).collect())
        .expect("cut points partition the unit mass")
}

/// A belief that differs from `other`.
pub fn belief_distinct_from<R: Rng>(rng: &mut R, other: &Belief, bits: u32) -> Belief {
    loop {
        let b = belief(rng, other.len(), bits);
        if b != *other {
            return b;
        }
    }
}

/// A stream with `len` periods and payoffs in `{0, 1/4, ..., 2}`.
pub fn stream<R: Rng>(rng: &mut R, len: usize) -> PayoffStream {
    PayoffStream::new((0..len).map(|_| dyadic(rng.gen_range(0..=8), 2)).collect())
        .expect("nonnegative payoffs")
}

/// A menu of `size` distinct random streams with 2 to 4 periods.
pub fn menu<R: Rng>(rng: &mut R, size: usize) -> Menu {
    let mut projects: Vec<PayoffStream> = Vec::with_capacity(size);
    while projects.len() < size {
        let len = rng.gen_range(2..=4);
        let s = stream(rng, len);
        if !projects.iter().any(|p| p.same_project(&s)) {
            projects.push(s);
        }
    }
    Menu::new(projects).expect("projects are distinct")
}

/// Two distinct streams with equal value at discount factor `beta`.
pub fn tied_pair<R: Rng>(rng: &mut R, beta: &Rational) -> (PayoffStream, PayoffStream) {
    let len = rng.gen_range(2..=3);
    let base = stream(rng, len);
    let bump = dyadic(rng.gen_range(1..=4), 2);
    let mut first = base.payoffs().to_vec();
    first[0] += beta * &bump;
    let mut second = base.payoffs().to_vec();
    second[1] += bump;
    (
        PayoffStream::new(first).expect("nonnegative payoffs"),
        PayoffStream::new(second).expect("nonnegative payoffs"),
    )
}

/// A menu of 2 to 4 projects; half the time two of them tie at a random
/// factor of `grid`, so the tie-breaker matters.
pub fn menu_with_tie<R: Rng>(rng: &mut R, grid: &DiscountGrid) -> Menu {
    let size = rng.gen_range(2..=4);
    let mut projects = Vec::with_capacity(size);
    if rng.gen_bool(0.5) {
        let atom = &grid.factors()[rng.gen_range(0..grid.len())];
        let (a, b) = tied_pair(rng, atom);
        projects.push(a);
        projects.push(b);
    }
    while projects.len() < size {
        let len = rng.gen_range(2..=4);
        let s = stream(rng, len);
        if !projects.iter().any(|p: &PayoffStream| p.same_project(&s)) {
            projects.push(s);
        }
    }
    Menu::new(projects).expect("projects are distinct")
}

/// One to three disjoint uniform pieces with endpoints in multiples of 1/16.
pub fn tiebreaker<R: Rng>(rng: &mut R) -> TieBreaker {
    let pieces = rng.gen_range(1..=3);
    let mut cuts: Vec<u64> = sample(rng, 17, 2 * pieces)
        .into_iter()
        .map(|k| k as u64)
        .collect();
    cuts.sort_unstable();
    let masses = belief(rng, pieces, 4);
    // Resample masses of zero so every piece carries weight.
    let masses: Vec<Rational> = if masses.probs().iter().any(num_traits::Zero::is_zero) {
        vec![Rational::new(1.into(), (pieces as i64).into()); pieces]
    } else {
        masses.probs().to_vec()
    };
    TieBreaker::new(
        cuts.chunks(2)
            .zip(masses)
            .map(|(c, mass)| Piece {
                lo: dyadic(c[0], 4),
                hi: dyadic(c[1], 4),
                mass,
            })
            .collect(),
    )
    .expect("disjoint pieces with unit mass")
}
