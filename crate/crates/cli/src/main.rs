//! `randisc`: social discounting experiments from the command line.
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use randisc_core::choice::monte_carlo_rcr;
use randisc_core::pareto::{lemma1_construct, unanimity_check, verify_lemma1, AggregatorSpec, TieMode};
use randisc_core::{rcr, Rational, UnanimityOutcome, WeightingSpec};
use randisc_cli::experiment::term_structure_csv;
use randisc_cli::formats::{
    format_rational, parse_beliefs, parse_grid, parse_list, parse_menu, parse_rational,
    parse_tiebreaker, write_beliefs, write_grid, write_menu, write_tiebreaker,
};
use randisc_cli::output::{read_input, write_atomic};
use randisc_cli::report::{counterexample_report, lemma1_report};
use randisc_cli::{ingest_rates, parse_weighting, CliError, Experiment, ExperimentConfig, Result};

#[derive(Parser)]
#[command(name = "randisc", version, about = "Social discounting with random discount factors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DataArgs {
    /// Survey table with header `rate,count` (rates in percent)
    #[arg(long)]
    data: PathBuf,
    /// Rates at or below this fraction form the first group
    #[arg(long, default_value = "11/100", value_parser = parse_rational)]
    split: Rational,
    /// `identity`, `gw` or `gw:THETA,GAMMA`, for every agent and the planner
    #[arg(long, default_value = "gw:0.77,0.44", value_parser = parse_weighting)]
    weighting: WeightingSpec,
    /// Aggregation weights of the two groups
    #[arg(long, default_value = "1/2,1/2")]
    lambda: String,
}

impl DataArgs {
    fn experiment(&self, horizon: usize) -> Result<Experiment> {
        let table = ingest_rates(&read_input(&self.data)?)?;
        let cfg = ExperimentConfig {
            split_threshold: self.split.clone(),
            weighting: self.weighting.clone(),
            planner_weighting: self.weighting.clone(),
            lambdas: parse_list(&self.lambda).map_err(CliError::Input)?,
            horizon,
        };
        Experiment::from_table(&table, &cfg)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Common,
    Free,
}

#[derive(Subcommand)]
enum Command {
    /// Discount factors and rates for the expected, ex ante and ex post curves
    TermStructure {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value_t = 100)]
        horizon: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Social and individual values of one project
    Evaluate {
        #[command(flatten)]
        data: DataArgs,
        /// Menu CSV; the first row is evaluated
        #[arg(long)]
        project: PathBuf,
    },
    /// Choice probabilities of the lexicographic random choice rule
    Rcr {
        #[arg(long)]
        menu: PathBuf,
        /// Belief CSV `beta,p1,...`
        #[arg(long)]
        belief: PathBuf,
        /// Which belief column to use
        #[arg(long, default_value_t = 1)]
        agent: usize,
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        tiebreaker: PathBuf,
        /// Also simulate this many two-stage draws
        #[arg(long)]
        mc: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Separating menu and tie-breakers for two belief profiles
    Lemma1 {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random search for unanimity violations of an aggregation rule
    ParetoCheck {
        /// `linear:L1,L2,...` or `dictator:N` (agents counted from 1)
        #[arg(long)]
        aggregator: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for the counterexample as CSV files
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest gap between the ex ante and ex post discount factors
    Consistency {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value_t = 100)]
        horizon: usize,
    },
}

fn parse_aggregator(s: &str) -> Result<AggregatorSpec> {
    let bad = || CliError::Input(format!("bad aggregator {s:?}; use linear:L1,L2,... or dictator:N"));
    let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
    match kind {
        "linear" => Ok(AggregatorSpec::linear(parse_list(arg).map_err(CliError::Input)?)?),
        "dictator" => {
            let n: usize = arg.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(AggregatorSpec::Dictator(n - 1))
        }
        _ => Err(bad()),
    }
}

fn check_grid(expected: &randisc_core::DiscountGrid, found: &randisc_core::DiscountGrid, what: &Path) -> Result<()> {
    if expected != found {
        return Err(CliError::Input(format!(
            "{}: beta column does not match the grid",
            what.display()
        )));
    }
    Ok(())
}

/// Returns whether a violation was found.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::TermStructure {
            data,
            horizon,
            out,
            svg,
        } => {
            let exp = data.experiment(horizon)?;
            let curves = exp.term_structures(horizon)?;
            write_atomic(&out, &term_structure_csv(&curves))?;
            if let Some(path) = svg {
                write_atomic(&path, &randisc_cli::svg::render_rates(&curves))?;
            }
            for c in &curves {
                let first = c.rates.first().map_or(f64::NAN, |r| r.to_f64());
                let last = c.rates.last().map_or(f64::NAN, |r| r.to_f64());
                println!("eta_{}: {first:.6} at t=0, {last:.6} at t={}", c.mode.tag(), horizon - 1);
            }
        }
        Command::Evaluate { data, project } => {
            let exp = data.experiment(1)?;
            let menu = parse_menu(&read_input(&project)?)?;
            let ev = exp.evaluate(&menu.projects()[0])?;
            println!("ex ante value: {}", ev.ex_ante);
            println!("ex post value: {}", ev.ex_post);
            for (n, u) in ev.individual.iter().enumerate() {
                println!("agent {}: {u}", n + 1);
            }
        }
        Command::Rcr {
            menu,
            belief,
            agent,
            grid,
            tiebreaker,
            mc,
            seed,
        } => {
            let menu_v = parse_menu(&read_input(&menu)?)?;
            let (bgrid, beliefs) = parse_beliefs(&read_input(&belief)?)?;
            let grid_v = parse_grid(&read_input(&grid)?)?;
            check_grid(&grid_v, &bgrid, &belief)?;
            let p = agent
                .checked_sub(1)
                .and_then(|i| beliefs.get(i))
                .ok_or_else(|| CliError::Input(format!("no belief column {agent}")))?;
            let tb = parse_tiebreaker(&read_input(&tiebreaker)?)?;
            let dist = rcr(&grid_v, p, &tb, &menu_v)?;
            let freq = match mc {
                Some(samples) => Some(monte_carlo_rcr(&grid_v, p, &tb, &menu_v, samples, seed)?),
                None => None,
            };
            println!("project,probability,approx{}", if freq.is_some() { ",simulated" } else { "" });
            for (i, q) in dist.probabilities().iter().enumerate() {
                let exact = match q.value() {
                    Some(v) => format_rational(v),
                    None => format!("[{};{}]", format_rational(&q.lo), format_rational(&q.hi)),
                };
                print!("{},{exact},{}", i + 1, q.mid_f64());
                if let Some(f) = &freq {
                    print!(",{}", f[i]);
                }
                println!();
            }
        }
        Command::Lemma1 { p, q, grid, out } => {
            let grid_v = parse_grid(&read_input(&grid)?)?;
            let (pg, ps) = parse_beliefs(&read_input(&p)?)?;
            let (qg, qs) = parse_beliefs(&read_input(&q)?)?;
            check_grid(&grid_v, &pg, &p)?;
            check_grid(&grid_v, &qg, &q)?;
            let cons = lemma1_construct(&grid_v, &ps, &qs)?;
            let report = verify_lemma1(&cons, &ps, &qs)?;
            write_atomic(&out, &lemma1_report(&cons, &report))?;
            println!(
                "{} agents, menu of {} projects: {}",
                cons.agents.len(),
                cons.menu.len(),
                if report.passed() { "identities hold" } else { "identities FAIL" }
            );
            return Ok(!report.passed());
        }
        Command::ParetoCheck {
            aggregator,
            mode,
            trials,
            seed,
            out,
        } => {
            let f = parse_aggregator(&aggregator)?;
            let tie_mode = match mode {
                ModeArg::Common => TieMode::Common,
                ModeArg::Free => TieMode::Free,
            };
            match unanimity_check(&f, tie_mode, trials, seed)? {
                UnanimityOutcome::Pass { trials } => {
                    println!("no violation in {trials} trials");
                }
                UnanimityOutcome::Counterexample(c) => {
                    let verified = c.verify()?;
                    print!("{}", counterexample_report(&c));
                    println!("recomputed: {}", if verified { "violation confirmed" } else { "NOT confirmed" });
                    if let Some(dir) = out {
                        std::fs::create_dir_all(&dir).map_err(|source| CliError::Write {
                            path: dir.clone(),
                            source,
                        })?;
                        let sit = &c.situation;
                        write_atomic(&dir.join("grid.csv"), &write_grid(&sit.grid))?;
                        write_atomic(&dir.join("beliefs.csv"), &write_beliefs(&sit.grid, &sit.beliefs))?;
                        write_atomic(
                            &dir.join("social_belief.csv"),
                            &write_beliefs(&sit.grid, std::slice::from_ref(&sit.social_belief)),
                        )?;
                        write_atomic(&dir.join("menu.csv"), &write_menu(&sit.menu))?;
                        for (n, tb) in sit.tiebreakers.iter().enumerate() {
                            write_atomic(&dir.join(format!("tiebreaker_{}.csv", n + 1)), &write_tiebreaker(tb))?;
                        }
                        write_atomic(
                            &dir.join("tiebreaker_social.csv"),
                            &write_tiebreaker(&sit.social_tiebreaker),
                        )?;
                    }
                    return Ok(true);
                }
            }
        }
        Command::Consistency { data, horizon } => {
            let exp = data.experiment(horizon)?;
            let gap = exp.consistency_gap(horizon)?;
            match gap.as_exact() {
                Some(g) if num_traits::Zero::is_zero(g) => println!("max gap: 0"),
                _ => println!("max gap: {:e}", gap.to_f64()),
            }
        }
    }
    Ok(false)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
