//! Univariate polynomials over the rationals and real-root isolation on
//! `[0, 1]`.
//!
//! Isolation works on the square-free part with a Sturm chain. Rational
//! roots are detected exactly: for a primitive integer polynomial with
//! leading coefficient `L`, every rational root has the form `j / L`, so once
//! an isolating interval holds at most two such candidates they are tested
//! by exact evaluation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebraic::AlgebraicPoint;
use crate::{Error, PayoffStream, Rational, Result};

/// Polynomial with rational coefficients in ascending degree; never has a
/// trailing zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Poly::new(vec![Rational::one()]), |acc, r| {
            acc.mul(&Poly::new(vec![-r.clone(), Rational::one()]))
        })
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Sign of the value at `x`.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval(x).cmp(&Rational::zero())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|c| c * k).collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dlead = divisor.leading().expect("division by the zero polynomial");
        let ddeg = divisor.0.len() - 1;
        let mut rem = self.0.clone();
        if rem.len() <= ddeg {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + ddeg] / dlead;
            if !c.is_zero() {
                for (j, d) in divisor.0.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(ddeg);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn square_free(&self) -> Poly {
        let d = self.derivative();
        if d.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&d);
        self.div_rem(&g).0
    }

    /// Positive multiple with coprime integer coefficients and a positive
    /// leading coefficient.
    pub fn primitive(&self) -> Poly {
        let Some(lead) = self.leading() else {
            return Poly::zero();
        };
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if lead.is_negative() {
            g = -g;
        }
        Poly(
            ints.into_iter()
                .map(|c| Rational::from_integer(c / &g))
                .collect(),
        )
    }

    /// Number of distinct real roots in `(a, b]`. Requires `a < b`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        SturmChain::new(&self.square_free()).count(a, b)
    }
}

/// The coefficient-wise difference `x - y`, whose value at `beta` is
/// `<beta, x> - <beta, y>`.
pub fn diff_polynomial(x: &PayoffStream, y: &PayoffStream) -> Poly {
    let n = x.payoffs().len().max(y.payoffs().len());
    Poly::new((0..n).map(|t| x.get(t) - y.get(t)).collect())
}

/// Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain(Vec<Poly>);

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone()];
        let mut next = p.derivative();
        while !next.is_zero() {
            // Positive rescaling keeps the sign pattern and tames growth.
            let l = next.leading().unwrap().abs();
            let next_norm = next.scale(&l.recip());
            let r = chain.last().unwrap().div_rem(&next_norm).1.neg();
            chain.push(next_norm);
            next = r;
        }
        SturmChain(chain)
    }

    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for p in &self.0 {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Default isolation width, `2^-40`.
pub fn default_epsilon() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 40)
}

/// All distinct real roots of `poly` in `[0, 1]`, sorted, each either an
/// exact rational or an enclosure of width at most `eps` holding exactly one
/// root.
pub fn isolate_roots(poly: &Poly, eps: &Rational) -> Result<Vec<AlgebraicPoint>> {
    isolate_roots_with_hints(poly, eps, &[])
}

/// Like [`isolate_roots`], testing the rational `hints` exactly before any
/// numeric isolation.
pub fn isolate_roots_with_hints(
    poly: &Poly,
    eps: &Rational,
    hints: &[Rational],
) -> Result<Vec<AlgebraicPoint>> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let mut q = poly.square_free().primitive();
    let mut exact: Vec<Rational> = Vec::new();

    let deflate = |q: &mut Poly, exact: &mut Vec<Rational>, r: &Rational| {
        let (quot, _) = q.div_rem(&Poly::new(vec![-r.clone(), Rational::one()]));
        *q = quot.primitive();
        exact.push(r.clone());
    };

    for h in [zero.clone(), one.clone()].iter().chain(hints) {
        if *h < zero || *h > one || exact.contains(h) {
            continue;
        }
        if q.degree().unwrap_or(0) > 0 && q.eval(h).is_zero() {
            deflate(&mut q, &mut exact, h);
        }
    }

    let enclosures = 'restart: loop {
        if q.degree().unwrap_or(0) == 0 {
            break Vec::new();
        }
        let chain = SturmChain::new(&q);
        let mut found = Vec::new();
        let mut stack = vec![(zero.clone(), one.clone())];
        while let Some((a, b)) = stack.pop() {
            match chain.count(&a, &b) {
                0 => {}
                1 => match refine_single(&q, a, b, eps) {
                    AlgebraicPoint::Rational(r) => {
                        deflate(&mut q, &mut exact, &r);
                        continue 'restart;
                    }
                    root => found.push(root),
                },
                _ => {
                    let mid = (&a + &b) / Rational::from_integer(2.into());
                    if q.eval(&mid).is_zero() {
                        deflate(&mut q, &mut exact, &mid);
                        continue 'restart;
                    }
                    stack.push((mid.clone(), b));
                    stack.push((a, mid));
                }
            }
        }
        break found;
    };

    let mut points: Vec<AlgebraicPoint> = enclosures;
    for r in &exact {
        for p in points.iter_mut() {
            p.exclude(r);
        }
    }
    points.extend(exact.into_iter().map(AlgebraicPoint::Rational));
    points.sort_by(|a, b| a.lower().cmp(b.lower()));
    Ok(points)
}

/// Shrinks `(a, b)`, which holds exactly one simple root of the square-free
/// primitive `q` and has nonroot endpoints, to width `<= eps`, returning an
/// exact point when the root is rational.
fn refine_single(q: &Poly, mut a: Rational, mut b: Rational, eps: &Rational) -> AlgebraicPoint {
    let two = Rational::from_integer(2.into());
    let lead = Rational::from_integer(q.leading().unwrap().numer().abs());
    let mut sign_a = q.sign_at(&a);
    let mut rational_checked = false;
    loop {
        if !rational_checked {
            let lo = (&a * &lead).ceil();
            let hi = (&b * &lead).floor();
            if hi <= lo || &hi - &lo <= Rational::one() {
                let mut j = lo;
                while j <= hi {
                    let cand = &j / &lead;
                    if cand > a && cand < b && q.eval(&cand).is_zero() {
                        return AlgebraicPoint::Rational(cand);
                    }
                    j += Rational::one();
                }
                rational_checked = true;
            }
        }
        if rational_checked && &b - &a <= *eps {
            return AlgebraicPoint::root(q.clone(), a, b);
        }
        let mid = (&a + &b) / &two;
        let s = q.sign_at(&mid);
        if s == Ordering::Equal {
            return AlgebraicPoint::Rational(mid);
        }
        if s == sign_a {
            a = mid;
            sign_a = s;
        } else {
            b = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn poly(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&k| int(k)).collect())
    }

    #[test]
    fn diff_of_tie_example() {
        let x = PayoffStream::new(vec![int(1), int(0)]).unwrap();
        let y = PayoffStream::new(vec![int(0), int(2)]).unwrap();
        assert_eq!(diff_polynomial(&x, &y), poly(&[1, -2]));
        assert!(diff_polynomial(&x, &x).is_zero());
    }

    #[test]
    fn division_and_gcd() {
        let p = Poly::from_roots(&[rat(1, 2), rat(1, 3)]);
        let q = Poly::from_roots(&[rat(1, 2), rat(2, 3)]);
        assert_eq!(p.gcd(&q), Poly::from_roots(&[rat(1, 2)]));
        let (quot, rem) = p.mul(&q).div_rem(&p);
        assert!(rem.is_zero());
        assert_eq!(quot, q);
    }

    #[test]
    fn square_free_drops_multiplicity() {
        let p = Poly::from_roots(&[rat(1, 2), rat(1, 2), rat(1, 5)]);
        assert_eq!(p.square_free().monic(), Poly::from_roots(&[rat(1, 2), rat(1, 5)]));
    }

    #[test]
    fn sturm_counts_roots() {
        let p = Poly::from_roots(&[rat(1, 8), rat(1, 4), rat(3, 8)]);
        assert_eq!(p.count_roots(&int(0), &int(1)), 3);
        assert_eq!(p.count_roots(&rat(1, 8), &rat(1, 4)), 1);
        assert_eq!(p.count_roots(&rat(1, 2), &int(1)), 0);
    }

    #[test]
    fn linear_root_is_exact() {
        let roots = isolate_roots(&poly(&[1, -2]), &default_epsilon()).unwrap();
        assert_eq!(roots, vec![AlgebraicPoint::Rational(rat(1, 2))]);
    }

    #[test]
    fn constructed_cubic_roots_are_exact() {
        let p = Poly::from_roots(&[rat(1, 8), rat(1, 4), rat(3, 8)]);
        let roots = isolate_roots(&p, &default_epsilon()).unwrap();
        let values: Vec<Rational> = roots.iter().map(|r| r.exact().unwrap().clone()).collect();
        assert_eq!(values, vec![rat(1, 8), rat(1, 4), rat(3, 8)]);
    }

    #[test]
    fn no_roots_in_unit_interval() {
        assert!(isolate_roots(&poly(&[1, 1]), &default_epsilon()).unwrap().is_empty());
    }

    #[test]
    fn irrational_root_is_enclosed() {
        // 2 b^2 - 1 has the root 1/sqrt(2) in [0, 1].
        let eps = default_epsilon();
        let roots = isolate_roots(&poly(&[-1, 0, 2]), &eps).unwrap();
        assert_eq!(roots.len(), 1);
        let (lo, hi) = (roots[0].lower().clone(), roots[0].upper().clone());
        assert!(&hi - &lo <= eps);
        let target = std::f64::consts::FRAC_1_SQRT_2;
        assert!(num_traits::ToPrimitive::to_f64(&lo).unwrap() < target);
        assert!(num_traits::ToPrimitive::to_f64(&hi).unwrap() > target);
    }

    #[test]
    fn endpoint_and_repeated_roots() {
        // b (b - 1) (b - 1/3)^2
        let p = Poly::from_roots(&[int(0), int(1), rat(1, 3), rat(1, 3)]);
        let roots = isolate_roots(&p, &default_epsilon()).unwrap();
        let values: Vec<Rational> = roots.iter().map(|r| r.exact().unwrap().clone()).collect();
        assert_eq!(values, vec![int(0), rat(1, 3), int(1)]);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(
            isolate_roots(&Poly::zero(), &default_epsilon()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn mixed_rational_and_irrational() {
        // (b - 1/2)(3 b^2 - 1): roots 1/2 and 1/sqrt(3).
        let p = Poly::from_roots(&[rat(1, 2)]).mul(&poly(&[-1, 0, 3]));
        let roots = isolate_roots(&p, &rat(1, 1 << 20)).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].exact(), Some(&rat(1, 2)));
        assert!(roots[1].exact().is_none());
        assert!(roots[0].upper() <= roots[1].lower());
    }
}
