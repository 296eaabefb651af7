//! Randomized search for violations of the choice-level unanimity condition.
//!
//! A violation is a menu and a project `x` such that every agent chooses `x`
//! with probability at least one half while society chooses it with
//! probability below one half, or the mirror image. A violation is only
//! reported when the probability enclosures decide both sides.

use rand::Rng;

use super::{lemma1_construct, AggregatorSpec};
use crate::choice::{rcr, Menu, Probability, TieBreaker};
use crate::sampling;
use crate::{Belief, DiscountGrid, Error, PayoffStream, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieMode {
    /// All agents and society share one tie-breaker.
    Common,
    /// Each agent has its own tie-breaker; society's is derived by a rule.
    Free,
}

/// How society's tie-breaker is derived from the agents' in free mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GRule {
    /// Society uses the given agent's tie-breaker.
    Agent(usize),
    UniformMixture,
}

impl GRule {
    /// Rules tried for `f`: a dictator's own tie-breaker, otherwise the first
    /// agent's and the uniform mixture.
    pub fn candidates(f: &AggregatorSpec) -> Vec<GRule> {
        match f {
            AggregatorSpec::Dictator(n) => vec![GRule::Agent(*n)],
            _ => vec![GRule::Agent(0), GRule::UniformMixture],
        }
    }

    pub fn apply(self, tbs: &[TieBreaker]) -> Result<TieBreaker> {
        match self {
            GRule::Agent(n) => tbs.get(n).cloned().ok_or(Error::LengthMismatch {
                expected: n + 1,
                found: tbs.len(),
            }),
            GRule::UniformMixture => {
                let w = Rational::new(1.into(), (tbs.len() as i64).into());
                let parts: Vec<(Rational, &TieBreaker)> =
                    tbs.iter().map(|tb| (w.clone(), tb)).collect();
                TieBreaker::mixture(&parts)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Every agent is at or above one half, society is below.
    IndividualsAtLeastHalf,
    /// Every agent is below one half, society is at or above.
    IndividualsBelowHalf,
}

/// Everything needed to recompute one choice comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Situation {
    pub grid: DiscountGrid,
    pub beliefs: Vec<Belief>,
    pub social_belief: Belief,
    pub tiebreakers: Vec<TieBreaker>,
    pub social_tiebreaker: TieBreaker,
    pub menu: Menu,
}

impl Situation {
    fn probabilities(&self) -> Result<(Vec<Vec<Probability>>, Vec<Probability>)> {
        let individual = self
            .beliefs
            .iter()
            .zip(&self.tiebreakers)
            .map(|(p, tb)| Ok(rcr(&self.grid, p, tb, &self.menu)?.probabilities().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let social = rcr(
            &self.grid,
            &self.social_belief,
            &self.social_tiebreaker,
            &self.menu,
        )?
        .probabilities()
        .to_vec();
        Ok((individual, social))
    }

    /// The first certified violation, if any.
    pub fn find_violation(&self) -> Result<Option<Counterexample>> {
        let (individual, social) = self.probabilities()?;
        let half = Rational::new(1.into(), 2.into());
        for x in 0..self.menu.len() {
            let column: Vec<Probability> = individual.iter().map(|row| row[x].clone()).collect();
            let violation = if column.iter().all(|p| p.lo >= half) && social[x].hi < half {
                Some(Violation::IndividualsAtLeastHalf)
            } else if column.iter().all(|p| p.hi < half) && social[x].lo >= half {
                Some(Violation::IndividualsBelowHalf)
            } else {
                None
            };
            if let Some(violation) = violation {
                return Ok(Some(Counterexample {
                    situation: self.clone(),
                    project: x,
                    individual: column,
                    social: social[x].clone(),
                    violation,
                }));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub situation: Situation,
    /// Index of the contested project in the menu.
    pub project: usize,
    pub individual: Vec<Probability>,
    pub social: Probability,
    pub violation: Violation,
}

impl Counterexample {
    pub fn target(&self) -> &PayoffStream {
        &self.situation.menu.projects()[self.project]
    }

    /// Recomputes all choice probabilities and confirms the violation.
    pub fn verify(&self) -> Result<bool> {
        let (individual, social) = self.situation.probabilities()?;
        let half = Rational::new(1.into(), 2.into());
        let x = self.project;
        Ok(match self.violation {
            Violation::IndividualsAtLeastHalf => {
                individual.iter().all(|row| row[x].lo >= half) && social[x].hi < half
            }
            Violation::IndividualsBelowHalf => {
                individual.iter().all(|row| row[x].hi < half) && social[x].lo >= half
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnanimityOutcome {
    Pass { trials: usize },
    Counterexample(Box<Counterexample>),
}

impl UnanimityOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, UnanimityOutcome::Pass { .. })
    }
}

fn agent_count(f: &AggregatorSpec) -> usize {
    match f {
        AggregatorSpec::Dictator(n) => (n + 1).max(2),
        _ => f.agents().expect("fixed agent count"),
    }
}

fn random_situations(
    f: &AggregatorSpec,
    mode: TieMode,
    seed: u64,
    trial: u64,
) -> Result<Vec<Situation>> {
    let mut rng = sampling::trial_rng(seed, trial);
    let n = agent_count(f);
    let m = rng.gen_range(2..=3);
    let grid = sampling::grid(&mut rng, m);
    let beliefs: Vec<Belief> = (0..n).map(|_| sampling::belief(&mut rng, m, 3)).collect();
    let social_belief = f.apply(&beliefs)?;
    social_belief.check_aligned(&grid)?;
    let menu = sampling::menu_with_tie(&mut rng, &grid);
    let base = Situation {
        grid,
        beliefs,
        social_belief,
        tiebreakers: Vec::new(),
        social_tiebreaker: TieBreaker::uniform(),
        menu,
    };
    Ok(match mode {
        TieMode::Common => {
            let tb = sampling::tiebreaker(&mut rng);
            vec![Situation {
                tiebreakers: vec![tb.clone(); n],
                social_tiebreaker: tb,
                ..base
            }]
        }
        TieMode::Free => {
            let tbs: Vec<TieBreaker> = (0..n).map(|_| sampling::tiebreaker(&mut rng)).collect();
            GRule::candidates(f)
                .into_iter()
                .map(|g| {
                    Ok(Situation {
                        tiebreakers: tbs.clone(),
                        social_tiebreaker: g.apply(&tbs)?,
                        ..base.clone()
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
    })
}

fn two_atom(d: &Rational) -> (Belief, Belief) {
    let half = Rational::new(1.into(), 2.into());
    let hi = &half + d / Rational::from_integer(2.into());
    let lo = &half - d / Rational::from_integer(2.into());
    (
        Belief::new(vec![hi.clone(), lo.clone()]).expect("valid two-point belief"),
        Belief::new(vec![lo, hi]).expect("valid two-point belief"),
    )
}

/// Profiles `P != Q` agent by agent with `F(P) = F(Q)`, when one is known.
fn attack_profiles(f: &AggregatorSpec) -> Option<(Vec<Belief>, Vec<Belief>)> {
    match f {
        AggregatorSpec::Dictator(_) => None,
        AggregatorSpec::Linear(lambdas) => {
            let positive: Vec<usize> = (0..lambdas.len())
                .filter(|&i| lambdas[i] > Rational::from_integer(0.into()))
                .collect();
            let (&lead, rest) = positive.split_first()?;
            if rest.is_empty() {
                return None;
            }
            let one = Rational::from_integer(1.into());
            let rest_weight: Rational = rest.iter().map(|&i| &lambdas[i]).sum();
            let shift = (&rest_weight / &lambdas[lead]).min(one.clone());
            let counter = -(&shift * &lambdas[lead]) / &rest_weight;
            let (p, q): (Vec<_>, Vec<_>) = (0..lambdas.len())
                .map(|i| {
                    let d = if i == lead {
                        shift.clone()
                    } else if rest.contains(&i) {
                        counter.clone()
                    } else {
                        one.clone()
                    };
                    two_atom(&d)
                })
                .unzip();
            Some((p, q))
        }
        AggregatorSpec::Custom { agents, .. } => {
            let (p, q): (Vec<_>, Vec<_>) = (0..*agents)
                .map(|i| (Belief::degenerate(2, i % 2), Belief::degenerate(2, (i + 1) % 2)))
                .unzip();
            let (fp, fq) = (f.apply(&p).ok()?, f.apply(&q).ok()?);
            (fp == fq).then_some((p, q))
        }
    }
}

fn attack(f: &AggregatorSpec) -> Result<Option<Counterexample>> {
    let Some((p, q)) = attack_profiles(f) else {
        return Ok(None);
    };
    let half = Rational::new(1.into(), 2.into());
    let quarter = Rational::new(1.into(), 4.into());
    let grid = DiscountGrid::new(vec![&half + &quarter, quarter])?;
    let cons = lemma1_construct(&grid, &p, &q)?;
    let tbs: Vec<TieBreaker> = cons.agents.iter().map(|a| a.tiebreaker.clone()).collect();
    for g in GRule::candidates(f) {
        let social_tiebreaker = g.apply(&tbs)?;
        for profile in [&cons.p_profile, &cons.q_profile] {
            let situation = Situation {
                grid: cons.grid.clone(),
                beliefs: profile.clone(),
                social_belief: f.apply(profile)?,
                tiebreakers: tbs.clone(),
                social_tiebreaker: social_tiebreaker.clone(),
                menu: cons.menu.clone(),
            };
            if let Some(found) = situation.find_violation()? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

/// Runs `trials` random situations, then in free mode the separating-menu
/// attack. Returns the first certified violation.
pub fn unanimity_check(
    f: &AggregatorSpec,
    mode: TieMode,
    trials: usize,
    seed: u64,
) -> Result<UnanimityOutcome> {
    for trial in 0..trials {
        for situation in random_situations(f, mode, seed, trial as u64)? {
            if let Some(found) = situation.find_violation()? {
                return Ok(UnanimityOutcome::Counterexample(Box::new(found)));
            }
        }
    }
    if mode == TieMode::Free {
        if let Some(found) = attack(f)? {
            return Ok(UnanimityOutcome::Counterexample(Box::new(found)));
        }
    }
    Ok(UnanimityOutcome::Pass { trials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn halves() -> AggregatorSpec {
        AggregatorSpec::linear(vec![rat(1, 2), rat(1, 2)]).unwrap()
    }

    #[test]
    fn linear_attack_profiles_match_point_masses() {
        let (p, q) = attack_profiles(&halves()).unwrap();
        assert_eq!(p, vec![Belief::degenerate(2, 0), Belief::degenerate(2, 1)]);
        assert_eq!(q, vec![Belief::degenerate(2, 1), Belief::degenerate(2, 0)]);
    }

    #[test]
    fn attack_profiles_share_social_belief() {
        let f = AggregatorSpec::linear(vec![rat(1, 5), rat(0, 1), rat(1, 2), rat(3, 10)]).unwrap();
        let (p, q) = attack_profiles(&f).unwrap();
        assert_eq!(f.apply(&p).unwrap(), f.apply(&q).unwrap());
        assert!(p.iter().zip(&q).all(|(a, b)| a != b));
    }

    #[test]
    fn common_mode_passes_for_linear_rule() {
        let out = unanimity_check(&halves(), TieMode::Common, 60, 7).unwrap();
        assert_eq!(out, UnanimityOutcome::Pass { trials: 60 });
    }

    #[test]
    fn free_mode_finds_verified_violation() {
        match unanimity_check(&halves(), TieMode::Free, 5, 7).unwrap() {
            UnanimityOutcome::Counterexample(c) => assert!(c.verify().unwrap()),
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn attack_alone_breaks_linear_rules() {
        for lambdas in [vec![rat(1, 2), rat(1, 2)], vec![rat(1, 3), rat(0, 1), rat(2, 3)]] {
            let f = AggregatorSpec::linear(lambdas).unwrap();
            match unanimity_check(&f, TieMode::Free, 0, 0).unwrap() {
                UnanimityOutcome::Counterexample(c) => assert!(c.verify().unwrap()),
                other => panic!("expected a violation, got {other:?}"),
            }
        }
    }

    #[test]
    fn dictator_passes_both_modes() {
        let f = AggregatorSpec::Dictator(0);
        assert!(unanimity_check(&f, TieMode::Common, 30, 3).unwrap().is_pass());
        assert!(unanimity_check(&f, TieMode::Free, 30, 3).unwrap().is_pass());
    }
}
