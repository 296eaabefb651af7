use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// A value that is exact whenever every input that produced it was exact.
///
/// Arithmetic between two `Exact` values stays exact; any operation touching
/// an `Approx` operand degrades to `f64`.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(Rational::one())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Approx(v) => *v,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Approx(v) => Scalar::Approx(v.abs()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Approx(v) => *v == 0.0,
        }
    }

    /// Larger of two values; exact comparison when both are exact.
    pub fn max(self, other: Scalar) -> Scalar {
        let keep_self = match (&self, &other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a >= b,
            _ => self.to_f64() >= other.to_f64(),
        };
        if keep_self {
            self
        } else {
            other
        }
    }

    /// Compensated (Kahan–Babuška) sum. Exact inputs are summed exactly; as
    /// soon as one input is approximate the exact partial sum is folded in
    /// once, at the end.
    pub fn sum<'a, I: IntoIterator<Item = &'a Scalar>>(items: I) -> Scalar {
        let mut exact = Rational::zero();
        let mut float = 0.0f64;
        let mut comp = 0.0f64;
        let mut any_float = false;
        for item in items {
            match item {
                Scalar::Exact(r) => exact += r,
                Scalar::Approx(v) => {
                    any_float = true;
                    let t = float + v;
                    if float.abs() >= v.abs() {
                        comp += (float - t) + v;
                    } else {
                        comp += (v - t) + float;
                    }
                    float = t;
                }
            }
        }
        if any_float {
            Scalar::Approx(float + comp + exact.to_f64().unwrap_or(f64::NAN))
        } else {
            Scalar::Exact(exact)
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Approx(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Approx(v) => write!(f, "{v}"),
        }
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    _ => Scalar::Approx(self.to_f64() $op rhs.to_f64()),
                }
            }
        }

        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                &self $op &rhs
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);
scalar_binop!(Div, div, /);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Approx(v) => Scalar::Approx(-v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Scalar::from(rat(1, 3));
        let b = Scalar::from(rat(1, 6));
        assert_eq!(&a + &b, Scalar::Exact(rat(1, 2)));
        assert_eq!(&a / &b, Scalar::Exact(rat(2, 1)));
    }

    #[test]
    fn mixing_degrades_to_float() {
        let s = Scalar::from(rat(1, 2)) * Scalar::Approx(0.5);
        assert_eq!(s, Scalar::Approx(0.25));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut items = vec![Scalar::Approx(1.0)];
        items.extend(std::iter::repeat_n(Scalar::Approx(1e-16), 1000));
        let s = Scalar::sum(&items).to_f64();
        assert!((s - (1.0 + 1e-13)).abs() < 1e-18);
    }
}
