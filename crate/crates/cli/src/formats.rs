//! CSV text formats for grids, beliefs, menus and tie-breakers.
//!
//! Rationals are written as `p/q` (or `p` when integral) so every format
//! round-trips exactly. On input, plain decimals such as `0.25` or `-1.5e-2`
//! are also accepted and converted without rounding.

use num_traits::{One, Zero};
use randisc_core::choice::Piece;
use randisc_core::{Belief, DiscountGrid, Menu, PayoffStream, Rational, TieBreaker};

use crate::error::{CliError, Result};

/// Parses `p/q`, an integer, or a decimal with optional exponent.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = num.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let den: num_bigint::BigInt =
            den.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s).ok_or_else(|| format!("not a number: {s:?}"))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: num_bigint::BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let shift = exp - frac_part.len() as i32;
    let ten = num_bigint::BigInt::from(10u8);
    let mut r = Rational::from_integer(all);
    if shift >= 0 {
        r *= Rational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        r /= Rational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Some(if neg { -r } else { r })
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn field(record: &csv::StringRecord, i: usize) -> Result<Rational> {
    let line = line_of(record);
    let s = record
        .get(i)
        .ok_or_else(|| CliError::parse(line, format!("missing column {}", i + 1)))?;
    parse_rational(s).map_err(|m| CliError::parse(line, m))
}

fn at_line<T>(line: u64, r: randisc_core::Result<T>) -> Result<T> {
    r.map_err(|e| CliError::parse(line, e.to_string()))
}

/// Grid CSV: header `beta`, one factor per row, descending.
pub fn parse_grid(text: &str) -> Result<DiscountGrid> {
    let mut factors = Vec::new();
    for record in reader(text).records() {
        factors.push(field(&record?, 0)?);
    }
    Ok(DiscountGrid::new(factors)?)
}

pub fn write_grid(grid: &DiscountGrid) -> String {
    let mut out = String::from("beta\n");
    for b in grid.factors() {
        out.push_str(&format_rational(b));
        out.push('\n');
    }
    out
}

/// Belief CSV: header `beta,p1,...,pN`; row `m` holds factor `beta_m` and
/// the probability each agent puts on it.
pub fn parse_beliefs(text: &str) -> Result<(DiscountGrid, Vec<Belief>)> {
    let mut rdr = reader(text);
    let agents = rdr.headers()?.len().saturating_sub(1);
    if agents == 0 {
        return Err(CliError::parse(1, "belief header needs `beta` and at least one agent column"));
    }
    let mut factors = Vec::new();
    let mut columns = vec![Vec::new(); agents];
    for record in rdr.records() {
        let record = record?;
        if record.len() != agents + 1 {
            return Err(CliError::parse(
                line_of(&record),
                format!("expected {} columns, found {}", agents + 1, record.len()),
            ));
        }
        factors.push(field(&record, 0)?);
        for (n, col) in columns.iter_mut().enumerate() {
            col.push(field(&record, n + 1)?);
        }
    }
    let grid = DiscountGrid::new(factors)?;
    let beliefs = columns
        .into_iter()
        .enumerate()
        .map(|(n, probs)| {
            Belief::new(probs).map_err(|e| CliError::Input(format!("agent {}: {e}", n + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((grid, beliefs))
}

pub fn write_beliefs(grid: &DiscountGrid, beliefs: &[Belief]) -> String {
    let mut out = String::from("beta");
    for n in 1..=beliefs.len() {
        out.push_str(&format!(",p{n}"));
    }
    out.push('\n');
    for (m, beta) in grid.factors().iter().enumerate() {
        out.push_str(&format_rational(beta));
        for b in beliefs {
            out.push(',');
            out.push_str(&format_rational(&b.probs()[m]));
        }
        out.push('\n');
    }
    out
}

/// Menu CSV: header `t0,t1,...`; one project per row. Rows may be shorter
/// than the header; missing periods pay zero.
pub fn parse_menu(text: &str) -> Result<Menu> {
    let mut projects = Vec::new();
    for record in reader(text).records() {
        let record = record?;
        let line = line_of(&record);
        let payoffs = record
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| parse_rational(s).map_err(|m| CliError::parse(line, m)))
            .collect::<Result<Vec<_>>>()?;
        projects.push(at_line(line, PayoffStream::new(payoffs))?);
    }
    Ok(Menu::new(projects)?)
}

pub fn write_menu(menu: &Menu) -> String {
    let width = menu.projects().iter().map(|x| x.payoffs().len()).max().unwrap_or(1);
    let header: Vec<String> = (0..width).map(|t| format!("t{t}")).collect();
    let mut out = header.join(",");
    out.push('\n');
    for x in menu.projects() {
        let row: Vec<String> = x.payoffs().iter().map(format_rational).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Tie-breaker CSV: header `lo,hi,mass`, one uniform piece per row.
pub fn parse_tiebreaker(text: &str) -> Result<TieBreaker> {
    let mut pieces = Vec::new();
    for record in reader(text).records() {
        let record = record?;
        pieces.push(Piece {
            lo: field(&record, 0)?,
            hi: field(&record, 1)?,
            mass: field(&record, 2)?,
        });
    }
    let total: Rational = pieces.iter().map(|p| &p.mass).sum();
    if !total.is_one() {
        return Err(CliError::Input(format!(
            "tie-breaker masses sum to {}, expected 1",
            format_rational(&total)
        )));
    }
    Ok(TieBreaker::new(pieces)?)
}

pub fn write_tiebreaker(tb: &TieBreaker) -> String {
    let mut out = String::from("lo,hi,mass\n");
    for p in tb.pieces() {
        out.push_str(&format!(
            "{},{},{}\n",
            format_rational(&p.lo),
            format_rational(&p.hi),
            format_rational(&p.mass)
        ));
    }
    out
}

/// Comma-separated rationals, as in `--lambda 1/2,1/2`.
pub fn parse_list(s: &str) -> std::result::Result<Vec<Rational>, String> {
    s.split(',').map(parse_rational).collect()
}
