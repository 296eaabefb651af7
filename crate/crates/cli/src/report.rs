//! Plain-text reports for the separating-menu construction and for
//! unanimity counterexamples.

use std::fmt::Write;

use randisc_core::pareto::{Counterexample, Violation};
use randisc_core::{Lemma1Construction, Lemma1Report, Probability};

use crate::formats::{format_rational, write_beliefs, write_menu, write_tiebreaker};

fn list(values: &[randisc_core::Rational]) -> String {
    let parts: Vec<String> = values.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn prob(p: &Probability) -> String {
    match p.value() {
        Some(v) => format_rational(v),
        None => format!("[{}, {}]", format_rational(&p.lo), format_rational(&p.hi)),
    }
}

fn indent(block: &str) -> String {
    block.lines().map(|l| format!("    {l}\n")).collect()
}

pub fn lemma1_report(cons: &Lemma1Construction, report: &Lemma1Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "grid: {}", list(cons.grid.factors()));
    let _ = writeln!(s, "midpoints: {}", list(&cons.gammas));
    let _ = writeln!(s, "menu (target first):");
    s.push_str(&indent(&write_menu(&cons.menu)));
    for (n, (agent, check)) in cons.agents.iter().zip(&report.agents).enumerate() {
        let _ = writeln!(s, "agent {}:", n + 1);
        let _ = writeln!(s, "  a = {}", list(&agent.a));
        let _ = writeln!(s, "  tau = {}", format_rational(&agent.tau));
        let _ = writeln!(s, "  b = {}", list(&agent.b));
        let _ = writeln!(s, "  c = {}", list(&agent.c));
        let _ = writeln!(s, "  tie-breaker:");
        s.push_str(&indent(&indent(&write_tiebreaker(&agent.tiebreaker))));
        let eq = |ok: bool| if ok { "==" } else { "!=" };
        let _ = writeln!(
            s,
            "  rho(x | P) = {} {} P.b = {}",
            prob(&check.rho_p),
            eq(check.identity_p()),
            format_rational(&check.p_dot_b)
        );
        let _ = writeln!(
            s,
            "  rho(x | Q) = {} {} Q.b = {}",
            prob(&check.rho_q),
            eq(check.identity_q()),
            format_rational(&check.q_dot_b)
        );
        let _ = writeln!(
            s,
            "  P.b < 1/2 < Q.b: {}",
            if check.separated() { "yes" } else { "no" }
        );
    }
    let _ = writeln!(s, "result: {}", if report.passed() { "pass" } else { "FAIL" });
    s
}

pub fn counterexample_report(c: &Counterexample) -> String {
    let sit = &c.situation;
    let mut s = String::new();
    let _ = writeln!(s, "violation: {}", match c.violation {
        Violation::IndividualsAtLeastHalf => {
            "every agent chooses the target with probability >= 1/2, society with < 1/2"
        }
        Violation::IndividualsBelowHalf => {
            "every agent chooses the target with probability < 1/2, society with >= 1/2"
        }
    });
    let _ = writeln!(s, "target: project {} of the menu", c.project + 1);
    for (n, p) in c.individual.iter().enumerate() {
        let _ = writeln!(s, "agent {}: {}", n + 1, prob(p));
    }
    let _ = writeln!(s, "society: {}", prob(&c.social));
    let _ = writeln!(s, "beliefs:");
    s.push_str(&indent(&write_beliefs(&sit.grid, &sit.beliefs)));
    let _ = writeln!(s, "social belief:");
    s.push_str(&indent(&write_beliefs(&sit.grid, std::slice::from_ref(&sit.social_belief))));
    let _ = writeln!(s, "menu:");
    s.push_str(&indent(&write_menu(&sit.menu)));
    for (n, tb) in sit.tiebreakers.iter().enumerate() {
        let _ = writeln!(s, "tie-breaker of agent {}:", n + 1);
        s.push_str(&indent(&write_tiebreaker(tb)));
    }
    let _ = writeln!(s, "social tie-breaker:");
    s.push_str(&indent(&write_tiebreaker(&sit.social_tiebreaker)));
    s
}
