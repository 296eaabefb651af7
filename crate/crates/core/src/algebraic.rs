//! Real algebraic points in `[0, 1]`: exact rationals, or an isolating
//! interval of a square-free polynomial.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::poly::{Poly, SturmChain};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraicPoint {
    Rational(Rational),
    /// The unique root of `poly` in the open interval `(lo, hi)`. `poly` is
    /// square-free, nonzero at both endpoints, and changes sign across them.
    Root { poly: Poly, lo: Rational, hi: Rational },
}

impl AlgebraicPoint {
    pub(crate) fn root(poly: Poly, lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo < hi);
        AlgebraicPoint::Root { poly, lo, hi }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            AlgebraicPoint::Rational(r) => Some(r),
            AlgebraicPoint::Root { .. } => None,
        }
    }

    pub fn lower(&self) -> &Rational {
        match self {
            AlgebraicPoint::Rational(r) => r,
            AlgebraicPoint::Root { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &Rational {
        match self {
            AlgebraicPoint::Rational(r) => r,
            AlgebraicPoint::Root { hi, .. } => hi,
        }
    }

    pub fn width(&self) -> Rational {
        self.upper() - self.lower()
    }

    pub fn to_f64(&self) -> f64 {
        let mid = (self.lower() + self.upper()) / Rational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// One bisection step; may collapse to an exact point.
    pub fn refine(&mut self) {
        let AlgebraicPoint::Root { poly, lo, hi } = self else {
            return;
        };
        let mid = (&*lo + &*hi) / Rational::from_integer(2.into());
        let s = poly.sign_at(&mid);
        if s == Ordering::Equal {
            *self = AlgebraicPoint::Rational(mid);
        } else if s == poly.sign_at(lo) {
            *lo = mid;
        } else {
            *hi = mid;
        }
    }

    pub fn refine_to(&mut self, eps: &Rational) {
        while self.width() > *eps {
            self.refine();
        }
    }

    /// Moves the enclosure off `r` when `r` sits strictly inside it and is
    /// not the root itself.
    pub(crate) fn exclude(&mut self, r: &Rational) {
        let AlgebraicPoint::Root { poly, lo, hi } = self else {
            return;
        };
        if r <= lo || r >= hi {
            return;
        }
        let s = poly.sign_at(r);
        if s == Ordering::Equal {
            *self = AlgebraicPoint::Rational(r.clone());
        } else if s == poly.sign_at(lo) {
            *lo = r.clone();
        } else {
            *hi = r.clone();
        }
    }

    /// Exact comparison. Enclosures are refined in place until the order is
    /// decided; equal irrational roots are detected through a common factor
    /// of the defining polynomials.
    pub fn cmp_refine(a: &mut AlgebraicPoint, b: &mut AlgebraicPoint) -> Ordering {
        match (&*a, &*b) {
            (AlgebraicPoint::Rational(x), AlgebraicPoint::Rational(y)) => return x.cmp(y),
            (AlgebraicPoint::Rational(x), AlgebraicPoint::Root { .. }) => {
                let x = x.clone();
                return b.cmp_rational(&x).reverse();
            }
            (AlgebraicPoint::Root { .. }, AlgebraicPoint::Rational(y)) => {
                let y = y.clone();
                return a.cmp_rational(&y);
            }
            _ => {}
        }
        if a.upper() <= b.lower() {
            return Ordering::Less;
        }
        if b.upper() <= a.lower() {
            return Ordering::Greater;
        }
        if let (AlgebraicPoint::Root { poly: pa, .. }, AlgebraicPoint::Root { poly: pb, .. }) =
            (&*a, &*b)
        {
            let g = pa.gcd(pb);
            if g.degree().unwrap_or(0) > 0 {
                let lo = a.lower().max(b.lower()).clone();
                let hi = a.upper().min(b.upper()).clone();
                // Endpoints of either enclosure are nonroots of g.
                let chain = SturmChain::new(&g);
                if chain.count(&lo, &hi) > 0 {
                    return Ordering::Equal;
                }
            }
        }
        loop {
            a.refine();
            b.refine();
            if a.exact().is_some() || b.exact().is_some() {
                return AlgebraicPoint::cmp_refine(a, b);
            }
            if a.upper() <= b.lower() {
                return Ordering::Less;
            }
            if b.upper() <= a.lower() {
                return Ordering::Greater;
            }
        }
    }

    /// Compares against a rational, refining so that `r` ends up outside the
    /// open enclosure.
    pub fn cmp_rational(&mut self, r: &Rational) -> Ordering {
        self.exclude(r);
        match self {
            AlgebraicPoint::Rational(x) => (*x).cmp(r),
            AlgebraicPoint::Root { lo, .. } => {
                if r <= lo {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// Sign of `q` at this point.
    pub fn sign_of(&mut self, q: &Poly) -> Ordering {
        if q.is_zero() {
            return Ordering::Equal;
        }
        if let AlgebraicPoint::Root { poly, lo, hi } = &*self {
            let g = poly.gcd(q);
            if g.degree().unwrap_or(0) > 0 && SturmChain::new(&g).count(lo, hi) > 0 {
                return Ordering::Equal;
            }
        }
        let qs = q.square_free();
        let chain = SturmChain::new(&qs);
        loop {
            match &*self {
                AlgebraicPoint::Rational(x) => return q.sign_at(x),
                AlgebraicPoint::Root { lo, hi, .. } => {
                    if chain.count(lo, hi) == 0 && !q.eval(hi).is_zero() {
                        return q.sign_at(hi);
                    }
                }
            }
            self.refine();
        }
    }
}

impl fmt::Display for AlgebraicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicPoint::Rational(r) => write!(f, "{r}"),
            AlgebraicPoint::Root { lo, hi, .. } => write!(f, "root in ({lo}, {hi})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{default_epsilon, isolate_roots};
    use crate::{int, rat};

    fn sqrt_half() -> AlgebraicPoint {
        let p = Poly::new(vec![int(-1), int(0), int(2)]);
        isolate_roots(&p, &rat(1, 4)).unwrap().remove(0)
    }

    #[test]
    fn compares_against_rationals() {
        let mut r = sqrt_half();
        assert_eq!(r.cmp_rational(&rat(7, 10)), Ordering::Greater);
        assert_eq!(r.cmp_rational(&rat(71, 100)), Ordering::Less);
    }

    #[test]
    fn equal_roots_of_different_polynomials() {
        let mut a = sqrt_half();
        // (2 b^2 - 1)(b - 1/5) shares the root.
        let p = Poly::new(vec![int(-1), int(0), int(2)]).mul(&Poly::from_roots(&[rat(1, 5)]));
        let mut b = isolate_roots(&p, &default_epsilon())
            .unwrap()
            .into_iter()
            .find(|x| x.exact().is_none())
            .unwrap();
        assert_eq!(AlgebraicPoint::cmp_refine(&mut a, &mut b), Ordering::Equal);
    }

    #[test]
    fn distinct_close_roots_are_ordered() {
        let mut a = sqrt_half();
        // 3 b^2 - 1 -> 1/sqrt(3) ~ 0.577 < 0.707
        let mut b = isolate_roots(&Poly::new(vec![int(-1), int(0), int(3)]), &rat(1, 2))
            .unwrap()
            .remove(0);
        assert_eq!(AlgebraicPoint::cmp_refine(&mut a, &mut b), Ordering::Greater);
    }

    #[test]
    fn sign_of_polynomial_at_root() {
        let mut a = sqrt_half();
        assert_eq!(a.sign_of(&Poly::from_roots(&[rat(1, 2)])), Ordering::Greater);
        assert_eq!(a.sign_of(&Poly::from_roots(&[rat(3, 4)])), Ordering::Less);
        let shared = Poly::new(vec![int(-2), int(0), int(4)]);
        assert_eq!(a.sign_of(&shared), Ordering::Equal);
    }
}
