//! Survey experiment: two rate groups, three social term structures.

use randisc_core::{
    alpha_coefficients, consistency_gap, delta_curve, ex_post_belief, rate_curve, rdu_value,
    BeliefProfile, DiscountGrid, Mode, PayoffStream, Rational, Scalar, TermStructure,
    WeightingSpec,
};

use crate::error::{CliError, Result};
use crate::formats::parse_list;
use crate::rates::{split_groups, RateTable};

/// `identity`, `gw` (the standard calibration) or `gw:THETA,GAMMA`.
pub fn parse_weighting(s: &str) -> std::result::Result<WeightingSpec, String> {
    match s.trim() {
        "identity" => Ok(WeightingSpec::Identity),
        "gw" => Ok(WeightingSpec::standard_gonzalez_wu()),
        other => {
            let params = other
                .strip_prefix("gw:")
                .ok_or_else(|| format!("unknown weighting {other:?}"))?;
            match parse_list(params)?.as_slice() {
                [theta, gamma] => WeightingSpec::gonzalez_wu(theta.clone(), gamma.clone())
                    .map_err(|e| e.to_string()),
                _ => Err(format!("expected gw:THETA,GAMMA, got {other:?}")),
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    /// Rates at or below this fraction form the low group.
    pub split_threshold: Rational,
    /// Every individual's weighting function.
    pub weighting: WeightingSpec,
    pub planner_weighting: WeightingSpec,
    pub lambdas: Vec<Rational>,
    pub horizon: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            split_threshold: randisc_core::rat(11, 100),
            weighting: WeightingSpec::standard_gonzalez_wu(),
            planner_weighting: WeightingSpec::standard_gonzalez_wu(),
            lambdas: vec![randisc_core::rat(1, 2), randisc_core::rat(1, 2)],
            horizon: 100,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.split_threshold <= Rational::from_integer(0.into()) {
            return Err(CliError::Input("split threshold must be positive".into()));
        }
        if self.horizon == 0 {
            return Err(CliError::Input("horizon must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Experiment {
    pub grid: DiscountGrid,
    pub profile: BeliefProfile,
    pub individual: Vec<WeightingSpec>,
    pub planner: WeightingSpec,
}

/// Social and individual values of one project.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub ex_ante: Scalar,
    pub ex_post: Scalar,
    pub individual: Vec<Scalar>,
}

impl Experiment {
    pub fn from_table(table: &RateTable, cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let (grid, profile) = split_groups(table, &cfg.split_threshold)?;
        let profile = BeliefProfile::new(profile.beliefs().to_vec(), cfg.lambdas.clone())?;
        Ok(Experiment {
            grid,
            individual: vec![cfg.weighting.clone(); profile.len()],
            profile,
            planner: cfg.planner_weighting.clone(),
        })
    }

    /// Term structures for the expected, ex ante and ex post curves.
    pub fn term_structures(&self, horizon: usize) -> Result<Vec<TermStructure>> {
        Mode::ALL
            .iter()
            .map(|&mode| {
                let alpha = alpha_coefficients(mode, &self.profile, &self.individual, &self.planner)?;
                let deltas = delta_curve(&alpha, &self.grid, horizon)?;
                let rates = rate_curve(&deltas)?;
                Ok(TermStructure {
                    mode,
                    deltas,
                    rates,
                })
            })
            .collect()
    }

    pub fn consistency_gap(&self, horizon: usize) -> Result<Scalar> {
        Ok(consistency_gap(
            &self.profile,
            &self.individual,
            &self.planner,
            &self.grid,
            horizon,
        )?)
    }

    pub fn evaluate(&self, x: &PayoffStream) -> Result<Evaluation> {
        let individual = self
            .profile
            .beliefs()
            .iter()
            .zip(&self.individual)
            .map(|(p, w)| rdu_value(&self.grid, p, w, x))
            .collect::<randisc_core::Result<Vec<_>>>()?;
        let weighted: Vec<Scalar> = individual
            .iter()
            .zip(self.profile.lambdas())
            .map(|(u, l)| u * &Scalar::Exact(l.clone()))
            .collect();
        let ex_post = rdu_value(&self.grid, &ex_post_belief(&self.profile), &self.planner, x)?;
        Ok(Evaluation {
            ex_ante: Scalar::sum(&weighted),
            ex_post,
            individual,
        })
    }
}

/// CSV with columns `t,delta_*,eta_*` for each curve, values as decimals.
/// The last row has no rate.
pub fn term_structure_csv(curves: &[TermStructure]) -> String {
    let mut out = String::from("t");
    for c in curves {
        out.push_str(&format!(",delta_{}", c.mode.tag()));
    }
    for c in curves {
        out.push_str(&format!(",eta_{}", c.mode.tag()));
    }
    out.push('\n');
    let rows = curves.iter().map(|c| c.deltas.len()).max().unwrap_or(0);
    for t in 0..rows {
        out.push_str(&t.to_string());
        for c in curves {
            out.push(',');
            if let Some(d) = c.deltas.get(t) {
                out.push_str(&d.to_f64().to_string());
            }
        }
        for c in curves {
            out.push(',');
            if let Some(r) = c.rates.get(t) {
                out.push_str(&r.to_f64().to_string());
            }
        }
        out.push('\n');
    }
    out
}
