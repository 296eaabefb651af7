//! Survey tables of suggested discount rates.

use num_traits::{One, Signed, Zero};
use randisc_core::{Belief, BeliefProfile, DiscountGrid, Rational};

use crate::error::{CliError, Result};
use crate::formats::{format_rational, parse_rational};

/// Suggested rates (in percent per period) with respondent counts, sorted by
/// rate ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateTable {
    rows: Vec<(Rational, u64)>,
}

impl RateTable {
    pub fn new(mut rows: Vec<(Rational, u64)>) -> Result<Self> {
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(CliError::Input(format!(
                "rate {} appears twice",
                format_rational(&w[0].0)
            )));
        }
        if rows.iter().any(|(r, _)| r.is_negative()) {
            return Err(CliError::Input("rates must be nonnegative".into()));
        }
        if rows.iter().all(|(_, c)| *c == 0) {
            return Err(CliError::Input("rate table has no respondents".into()));
        }
        Ok(RateTable { rows })
    }

    pub fn rows(&self) -> &[(Rational, u64)] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn respondents(&self) -> u64 {
        self.rows.iter().map(|(_, c)| c).sum()
    }
}

/// Parses `rate,count` CSV. Rows with a negative rate are dropped; a zero
/// rate is kept. Lines starting with `#` are comments.
pub fn ingest_rates(text: &str) -> Result<RateTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "rate" || &headers[1] != "count" {
        return Err(CliError::parse(1, "expected header `rate,count`"));
    }
    let mut rows: Vec<(Rational, u64)> = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let rate = parse_rational(&record[0]).map_err(|m| CliError::parse(line, m))?;
        let count: u64 = record[1]
            .parse()
            .map_err(|_| CliError::parse(line, format!("bad count {:?}", &record[1])))?;
        if rows.iter().any(|(r, _)| *r == rate) {
            return Err(CliError::parse(
                line,
                format!("duplicate rate {}", format_rational(&rate)),
            ));
        }
        rows.push((rate, count));
    }
    rows.retain(|(r, _)| !r.is_negative());
    if rows.is_empty() {
        return Err(CliError::Input("rate table is empty".into()));
    }
    RateTable::new(rows)
}

pub fn write_rates(table: &RateTable) -> String {
    let mut out = String::from("rate,count\n");
    for (r, c) in table.rows() {
        out.push_str(&format!("{},{c}\n", format_rational(r)));
    }
    out
}

/// Discount factor `1 / (1 + r / 100)` for a rate in percent.
pub fn rate_to_factor(rate_percent: &Rational) -> Rational {
    let hundred = Rational::from_integer(100.into());
    (Rational::one() + rate_percent / hundred).recip()
}

/// Splits respondents into a low-rate group (rate at or below `threshold`,
/// a fraction such as `11/100`) and a high-rate group, each believing in its
/// own rates in proportion to their counts. Weights are equal.
pub fn split_groups(
    table: &RateTable,
    threshold: &Rational,
) -> Result<(DiscountGrid, BeliefProfile)> {
    let hundred = Rational::from_integer(100.into());
    let low: Vec<bool> = table
        .rows()
        .iter()
        .map(|(r, _)| r / &hundred <= *threshold)
        .collect();
    let totals = [true, false].map(|side| {
        table
            .rows()
            .iter()
            .zip(&low)
            .filter(|(_, l)| **l == side)
            .map(|((_, c), _)| *c)
            .sum::<u64>()
    });
    if totals.contains(&0) {
        return Err(CliError::Input(format!(
            "threshold {} leaves a group without respondents",
            format_rational(threshold)
        )));
    }
    // Ascending rates give descending factors.
    let grid = DiscountGrid::new(table.rows().iter().map(|(r, _)| rate_to_factor(r)).collect())?;
    let beliefs = [true, false]
        .iter()
        .zip(totals)
        .map(|(side, total)| {
            let total = Rational::from_integer(total.into());
            Belief::new(
                table
                    .rows()
                    .iter()
                    .zip(&low)
                    .map(|((_, c), l)| {
                        if l == side {
                            Rational::from_integer((*c).into()) / &total
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect(),
            )
        })
        .collect::<randisc_core::Result<Vec<_>>>()?;
    Ok((grid, BeliefProfile::uniform(beliefs)?))
}
