//! The separating menu and tie-breakers for a pair of belief profiles.
//!
//! Given `P^n != Q^n` for every agent, the construction yields one menu `D`
//! with a target project `x` and, per agent, a tie-breaker `v^n` such that
//! the choice probability of `x` is `P^n . b^n < 1/2` under `(P^n, v^n)` and
//! `Q^n . b^n > 1/2` under `(Q^n, v^n)`.

use num_traits::{One, Signed, Zero};

use super::separating_direction;
use crate::choice::{rcr, Menu, Piece, Probability, TieBreaker};
use crate::{Belief, DiscountGrid, Error, PayoffStream, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentConstruction {
    /// Separating direction: `P . a < 0 < Q . a`.
    pub a: Vec<Rational>,
    pub tau: Rational,
    /// `(a + tau) / (2 tau)`, every entry in `(0, 1)`.
    pub b: Vec<Rational>,
    /// Tie-breaker mass on `[beta_m, gamma_m]`.
    pub c: Vec<Rational>,
    pub tiebreaker: TieBreaker,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Construction {
    /// The grid actually used; a two-factor grid gains a third factor.
    pub grid: DiscountGrid,
    /// `gamma_1..gamma_{M+1}` with `gamma_i` strictly between `beta_i` and
    /// `beta_{i-1}` (where `beta_0 = 1`, `beta_{M+1} = 0`).
    pub gammas: Vec<Rational>,
    /// Menu `{x, y^1, ..., y^M}` with the target `x` first.
    pub menu: Menu,
    pub agents: Vec<AgentConstruction>,
    pub p_profile: Vec<Belief>,
    pub q_profile: Vec<Belief>,
}

impl Lemma1Construction {
    pub fn target(&self) -> &PayoffStream {
        &self.menu.projects()[0]
    }

    /// `y^m` for the one-based atom index `m`.
    pub fn rival(&self, m: usize) -> &PayoffStream {
        &self.menu.projects()[m]
    }
}

fn pad(b: &Belief, len: usize) -> Belief {
    let mut probs = b.probs().to_vec();
    probs.resize(len, Rational::zero());
    Belief::new(probs).expect("zero padding keeps a belief normalized")
}

/// Builds the separating menu and per-agent tie-breakers.
pub fn lemma1_construct(
    grid: &DiscountGrid,
    p_profile: &[Belief],
    q_profile: &[Belief],
) -> Result<Lemma1Construction> {
    if p_profile.is_empty() {
        return Err(Error::EmptyProfile);
    }
    if p_profile.len() != q_profile.len() {
        return Err(Error::LengthMismatch {
            expected: p_profile.len(),
            found: q_profile.len(),
        });
    }
    for (n, (p, q)) in p_profile.iter().zip(q_profile).enumerate() {
        p.check_aligned(grid)?;
        q.check_aligned(grid)?;
        if p == q {
            return Err(Error::IdenticalAgentBeliefs(n));
        }
    }
    let one = Rational::one();
    let two = Rational::from_integer(2.into());

    let mut factors = grid.factors().to_vec();
    if factors.len() < 2 || factors[0] >= one || factors.last().unwrap().is_zero() {
        return Err(Error::GridNotInterior);
    }
    if factors.len() == 2 {
        let extra = &factors[1] / &two;
        factors.push(extra);
    }
    let grid = DiscountGrid::new(factors).map_err(|_| Error::GridNotInterior)?;
    let m = grid.len();
    let betas = grid.factors();
    let p_profile: Vec<Belief> = p_profile.iter().map(|b| pad(b, m)).collect();
    let q_profile: Vec<Belief> = q_profile.iter().map(|b| pad(b, m)).collect();

    // gamma_i = midpoint of (beta_i, beta_{i-1}), i = 1..=M+1.
    let gammas: Vec<Rational> = (0..=m)
        .map(|i| {
            let upper = if i == 0 { one.clone() } else { betas[i - 1].clone() };
            let lower = if i == m { Rational::zero() } else { betas[i].clone() };
            (upper + lower) / &two
        })
        .collect();
    let g_last = &gammas[m];

    let int = |k: i64| Rational::from_integer(k.into());
    let target = PayoffStream::new(vec![int(0), int(2), int(0), int(1)])?;
    let mut projects = vec![target];
    for (k, (beta, gamma)) in betas.iter().zip(&gammas).enumerate() {
        // x - y^m = (b - gamma_{M+1})(b - beta_m)(b - gamma_m), by Vieta.
        let y0 = g_last * beta * gamma;
        let y1 = int(2) - g_last * (beta + gamma) - beta * gamma;
        let y2 = g_last + beta + gamma;
        if y1.is_negative() {
            return Err(Error::NegativeConstructedPayoff(k + 1));
        }
        projects.push(PayoffStream::new(vec![y0, y1, y2])?);
    }
    let menu = Menu::new(projects)?;

    let mm = int(m as i64);
    let agents = p_profile
        .iter()
        .zip(&q_profile)
        .map(|(p, q)| {
            let a = separating_direction(p, q)?;
            let sum_a: Rational = a.iter().sum();
            let max_abs = a.iter().map(|v| v.abs()).max().unwrap();
            let mut bound = one.clone();
            bound = bound.max(&sum_a / (&mm - &one));
            // Sum of the masses stays below one only if tau > sum(a) / (M - 2).
            bound = bound.max(&sum_a / (&mm - &two));
            for ai in &a {
                let others: Rational = &sum_a - ai;
                bound = bound.max((&mm - &two) * ai - others);
            }
            let tau = &two * bound.max(max_abs);
            let b: Vec<Rational> = a.iter().map(|ai| (ai + &tau) / (&two * &tau)).collect();
            let sum_b: Rational = b.iter().sum();
            let c: Vec<Rational> = b
                .iter()
                .map(|bm| (&sum_b - bm - (&mm - &two) * bm) / (&mm - &one))
                .collect();
            let sum_c: Rational = c.iter().sum();
            let mut pieces: Vec<Piece> = betas
                .iter()
                .zip(&gammas)
                .zip(&c)
                .map(|((beta, gamma), cm)| Piece {
                    lo: beta.clone(),
                    hi: gamma.clone(),
                    mass: cm.clone(),
                })
                .collect();
            pieces.push(Piece {
                lo: Rational::zero(),
                hi: g_last.clone(),
                mass: &one - sum_c,
            });
            let tiebreaker = TieBreaker::new(pieces)?;
            Ok(AgentConstruction {
                a,
                tau,
                b,
                c,
                tiebreaker,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Lemma1Construction {
        grid,
        gammas,
        menu,
        agents,
        p_profile,
        q_profile,
    })
}

/// Per-agent outcome of [`verify_lemma1`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentCheck {
    pub rho_p: Probability,
    pub p_dot_b: Rational,
    pub rho_q: Probability,
    pub q_dot_b: Rational,
}

impl AgentCheck {
    pub fn identity_p(&self) -> bool {
        self.rho_p.value() == Some(&self.p_dot_b)
    }

    pub fn identity_q(&self) -> bool {
        self.rho_q.value() == Some(&self.q_dot_b)
    }

    pub fn separated(&self) -> bool {
        let half = Rational::new(1.into(), 2.into());
        self.p_dot_b < half && self.q_dot_b > half
    }

    pub fn passed(&self) -> bool {
        self.identity_p() && self.identity_q() && self.separated()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Report {
    pub agents: Vec<AgentCheck>,
}

impl Lemma1Report {
    pub fn passed(&self) -> bool {
        self.agents.iter().all(AgentCheck::passed)
    }
}

/// Recomputes every agent's choice probability of the target with the
/// general choice-rule machinery and compares it with `P^n . b^n` and
/// `Q^n . b^n`.
pub fn verify_lemma1(
    cons: &Lemma1Construction,
    p_profile: &[Belief],
    q_profile: &[Belief],
) -> Result<Lemma1Report> {
    let m = cons.grid.len();
    let x = cons.target();
    let agents = cons
        .agents
        .iter()
        .zip(p_profile.iter().zip(q_profile))
        .map(|(agent, (p, q))| {
            let (p, q) = (pad(p, m), pad(q, m));
            let rho_p = rcr(&cons.grid, &p, &agent.tiebreaker, &cons.menu)?;
            let rho_q = rcr(&cons.grid, &q, &agent.tiebreaker, &cons.menu)?;
            Ok(AgentCheck {
                rho_p: rho_p.get(x).cloned().expect("target is in the menu"),
                p_dot_b: p.dot(&agent.b),
                rho_q: rho_q.get(x).cloned().expect("target is in the menu"),
                q_dot_b: q.dot(&agent.b),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Lemma1Report { agents })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::normal_cone;
    use crate::poly::{diff_polynomial, Poly};
    use crate::rat;

    fn grid3() -> DiscountGrid {
        DiscountGrid::new(vec![rat(3, 4), rat(1, 2), rat(1, 4)]).unwrap()
    }

    #[test]
    fn midpoint_gammas_and_cubic() {
        let p = vec![Belief::degenerate(3, 0)];
        let q = vec![Belief::degenerate(3, 2)];
        let cons = lemma1_construct(&grid3(), &p, &q).unwrap();
        assert_eq!(cons.gammas, vec![rat(7, 8), rat(5, 8), rat(3, 8), rat(1, 8)]);
        let d = diff_polynomial(cons.target(), cons.rival(2));
        assert_eq!(d, Poly::from_roots(&[rat(1, 8), rat(1, 2), rat(5, 8)]));
    }

    #[test]
    fn pairwise_cone_matches_cubic_sign_pattern() {
        let p = vec![Belief::degenerate(3, 0)];
        let q = vec![Belief::degenerate(3, 2)];
        let cons = lemma1_construct(&grid3(), &p, &q).unwrap();
        let pair = Menu::new(vec![cons.target().clone(), cons.rival(2).clone()]).unwrap();
        let cone = normal_cone(&pair, cons.target()).unwrap();
        assert_eq!(
            cone.as_rational().unwrap(),
            vec![(rat(1, 8), rat(1, 2)), (rat(5, 8), rat(1, 1))]
        );
    }

    #[test]
    fn masses_reproduce_b() {
        let p = vec![
            Belief::new(vec![rat(1, 2), rat(1, 4), rat(1, 4)]).unwrap(),
            Belief::new(vec![rat(0, 1), rat(1, 1), rat(0, 1)]).unwrap(),
        ];
        let q = vec![
            Belief::new(vec![rat(1, 8), rat(1, 8), rat(3, 4)]).unwrap(),
            Belief::new(vec![rat(1, 3), rat(1, 3), rat(1, 3)]).unwrap(),
        ];
        let cons = lemma1_construct(&grid3(), &p, &q).unwrap();
        for agent in &cons.agents {
            assert!(agent.b.iter().all(|b| b.is_positive() && *b < Rational::one()));
            assert!(agent.c.iter().all(Signed::is_positive));
            assert!(agent.c.iter().sum::<Rational>() < Rational::one());
            let total: Rational = agent.c.iter().sum();
            for (cm, bm) in agent.c.iter().zip(&agent.b) {
                assert_eq!(&total - cm, *bm);
            }
        }
        let report = verify_lemma1(&cons, &p, &q).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn point_masses_straddle_half() {
        let p = vec![Belief::degenerate(3, 0)];
        let q = vec![Belief::degenerate(3, 2)];
        let cons = lemma1_construct(&grid3(), &p, &q).unwrap();
        let report = verify_lemma1(&cons, &p, &q).unwrap();
        let half = rat(1, 2);
        assert!(report.agents[0].rho_p.hi < half);
        assert!(report.agents[0].rho_q.lo > half);
        assert!(report.passed());
    }

    #[test]
    fn two_factor_grid_is_enlarged() {
        let grid = DiscountGrid::new(vec![rat(3, 4), rat(1, 4)]).unwrap();
        let p = vec![Belief::degenerate(2, 0), Belief::degenerate(2, 1)];
        let q = vec![Belief::degenerate(2, 1), Belief::degenerate(2, 0)];
        let cons = lemma1_construct(&grid, &p, &q).unwrap();
        assert_eq!(cons.grid.factors(), &[rat(3, 4), rat(1, 4), rat(1, 8)]);
        assert!(verify_lemma1(&cons, &p, &q).unwrap().passed());
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = vec![Belief::degenerate(3, 0)];
        assert_eq!(
            lemma1_construct(&grid3(), &p, &p),
            Err(Error::IdenticalAgentBeliefs(0))
        );
        let edge = DiscountGrid::new(vec![rat(1, 1), rat(1, 2), rat(1, 4)]).unwrap();
        let q = vec![Belief::degenerate(3, 1)];
        assert_eq!(lemma1_construct(&edge, &p, &q), Err(Error::GridNotInterior));
    }
}
