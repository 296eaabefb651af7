//! Probability weighting functions.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Rational, Result, Scalar};

/// A probability weighting function `w: [0,1] -> [0,1]`, continuous and
/// strictly increasing with `w(0) = 0` and `w(1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightingSpec {
    /// `w(p) = p`; rank-dependent utility collapses to expected utility.
    Identity,
    /// Linear-in-log-odds form `theta p^gamma / (theta p^gamma + (1-p)^gamma)`.
    GonzalezWu { theta: Rational, gamma: Rational },
}

impl WeightingSpec {
    pub fn gonzalez_wu(theta: Rational, gamma: Rational) -> Result<Self> {
        if !theta.is_positive() || !gamma.is_positive() {
            return Err(Error::InvalidWeighting(Box::new((theta, gamma))));
        }
        Ok(WeightingSpec::GonzalezWu { theta, gamma })
    }

    /// The calibration `theta = 0.77`, `gamma = 0.44`.
    pub fn standard_gonzalez_wu() -> Self {
        WeightingSpec::GonzalezWu {
            theta: crate::rat(77, 100),
            gamma: crate::rat(44, 100),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, WeightingSpec::Identity)
    }

    /// Evaluates `w(p)`; see [`weight_eval`].
    pub fn eval(&self, p: &Rational) -> Result<Scalar> {
        weight_eval(self, p)
    }
}

/// Evaluates the weighting function at `p`.
///
/// The identity returns `p` exactly. Gonzalez–Wu pins the endpoints exactly
/// and otherwise evaluates in `f64`, taking `1 - p` exactly before the
/// conversion so the upper tail keeps its relative precision.
pub fn weight_eval(w: &WeightingSpec, p: &Rational) -> Result<Scalar> {
    if p.is_negative() || *p > Rational::one() {
        return Err(Error::OutsideUnitInterval(p.clone()));
    }
    match w {
        WeightingSpec::Identity => Ok(Scalar::Exact(p.clone())),
        WeightingSpec::GonzalezWu { theta, gamma } => {
            if p.is_zero() || p.is_one() {
                return Ok(Scalar::Exact(p.clone()));
            }
            let theta = theta.to_f64().unwrap_or(f64::NAN);
            let gamma = gamma.to_f64().unwrap_or(f64::NAN);
            let q = (Rational::one() - p).to_f64().unwrap_or(f64::NAN);
            let p = p.to_f64().unwrap_or(f64::NAN);
            let num = theta * p.powf(gamma);
            Ok(Scalar::Approx(num / (num + q.powf(gamma))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn identity_is_exact() {
        let w = WeightingSpec::Identity;
        assert_eq!(weight_eval(&w, &rat(3, 10)).unwrap(), Scalar::Exact(rat(3, 10)));
    }

    #[test]
    fn gw_endpoints_are_pinned() {
        let w = WeightingSpec::standard_gonzalez_wu();
        assert_eq!(weight_eval(&w, &rat(0, 1)).unwrap(), Scalar::Exact(rat(0, 1)));
        assert_eq!(weight_eval(&w, &rat(1, 1)).unwrap(), Scalar::Exact(rat(1, 1)));
    }

    #[test]
    fn gw_half_matches_closed_form() {
        // At p = 1/2 the p^gamma factors cancel: w = theta / (theta + 1).
        let w = WeightingSpec::standard_gonzalez_wu();
        let v = weight_eval(&w, &rat(1, 2)).unwrap().to_f64();
        let closed = 0.77 / 1.77;
        assert!(((v - closed) / closed).abs() <= 1e-12);
        assert!((v - 0.435028).abs() < 1e-6);
    }

    #[test]
    fn domain_errors() {
        let w = WeightingSpec::Identity;
        assert!(matches!(
            weight_eval(&w, &rat(3, 2)),
            Err(Error::OutsideUnitInterval(_))
        ));
        assert!(weight_eval(&w, &rat(-1, 2)).is_err());
    }

    #[test]
    fn gw_rejects_nonpositive_params() {
        assert!(WeightingSpec::gonzalez_wu(rat(0, 1), rat(1, 2)).is_err());
    }

    #[test]
    fn gw_is_increasing_on_a_fine_grid() {
        let w = WeightingSpec::standard_gonzalez_wu();
        let vals: Vec<f64> = (0..=200)
            .map(|k| weight_eval(&w, &rat(k, 200)).unwrap().to_f64())
            .collect();
        assert!(vals.windows(2).all(|p| p[0] < p[1]));
    }
}
