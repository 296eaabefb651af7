//! Maximizer sets and normal cones.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{Menu, Probability, TieBreaker};
use crate::algebraic::AlgebraicPoint;
use crate::poly::{default_epsilon, diff_polynomial, isolate_roots_with_hints, Poly};
use crate::rdu::dot_discount;
use crate::{Error, PayoffStream, Rational, Result};

/// Closed interval with algebraic endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedInterval {
    pub lo: AlgebraicPoint,
    pub hi: AlgebraicPoint,
}

impl ClosedInterval {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// Sorted, pairwise disjoint closed intervals inside `[0, 1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalUnion {
    intervals: Vec<ClosedInterval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion::default()
    }

    pub fn unit() -> Self {
        IntervalUnion {
            intervals: vec![ClosedInterval {
                lo: AlgebraicPoint::Rational(Rational::zero()),
                hi: AlgebraicPoint::Rational(Rational::one()),
            }],
        }
    }

    /// Builds a union from exact intervals; input must be sorted and disjoint.
    pub fn from_rational(bounds: &[(Rational, Rational)]) -> Self {
        IntervalUnion {
            intervals: bounds
                .iter()
                .map(|(a, b)| ClosedInterval {
                    lo: AlgebraicPoint::Rational(a.clone()),
                    hi: AlgebraicPoint::Rational(b.clone()),
                })
                .collect(),
        }
    }

    pub fn intervals(&self) -> &[ClosedInterval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// `Some(bounds)` when every endpoint is rational.
    pub fn as_rational(&self) -> Option<Vec<(Rational, Rational)>> {
        self.intervals
            .iter()
            .map(|iv| Some((iv.lo.exact()?.clone(), iv.hi.exact()?.clone())))
            .collect()
    }
}

/// Whether the union of all the given sets is exactly `[0, 1]`.
pub fn covers_unit(unions: &[IntervalUnion]) -> bool {
    let mut all: Vec<ClosedInterval> = unions
        .iter()
        .flat_map(|u| u.intervals.iter().cloned())
        .collect();
    // Insertion sort by left endpoint; comparisons may refine enclosures.
    for i in 1..all.len() {
        let mut j = i;
        while j > 0 {
            let (left, right) = all.split_at_mut(j);
            let ord = AlgebraicPoint::cmp_refine(&mut left[j - 1].lo, &mut right[0].lo);
            if ord != Ordering::Greater {
                break;
            }
            all.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut reach = AlgebraicPoint::Rational(Rational::zero());
    let mut started = false;
    for mut iv in all {
        let ord = AlgebraicPoint::cmp_refine(&mut iv.lo, &mut reach);
        if !started {
            if ord != Ordering::Equal {
                return false;
            }
            started = true;
        } else if ord == Ordering::Greater {
            return false;
        }
        if AlgebraicPoint::cmp_refine(&mut iv.hi, &mut reach) == Ordering::Greater {
            reach = iv.hi;
        }
    }
    started && reach.cmp_rational(&Rational::one()) == Ordering::Equal
}

/// Indices of the projects in `menu` with maximal discounted utility at
/// `beta`, compared exactly.
pub fn maximizer_set(beta: &Rational, menu: &Menu) -> Vec<usize> {
    let values: Vec<Rational> = menu
        .projects()
        .iter()
        .map(|x| dot_discount(beta, x))
        .collect();
    let best = values.iter().max().expect("menus are nonempty");
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| *v == best)
        .map(|(i, _)| i)
        .collect()
}

/// `N(D, x)`: the discount factors in `[0, 1]` at which `x` weakly
/// maximizes discounted utility over `menu`.
pub fn normal_cone(menu: &Menu, x: &PayoffStream) -> Result<IntervalUnion> {
    let idx = menu.position(x).ok_or(Error::NotInMenu)?;
    Ok(cone_at(menu, idx, &default_epsilon(), &[]))
}

/// Normal cone of project `idx`; `hints` are rationals tested as exact
/// roots before numeric isolation.
pub(crate) fn cone_at(
    menu: &Menu,
    idx: usize,
    eps: &Rational,
    hints: &[Rational],
) -> IntervalUnion {
    let x = &menu.projects()[idx];
    let diffs: Vec<Poly> = menu
        .projects()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != idx)
        .map(|(_, y)| diff_polynomial(x, y))
        .collect();
    if diffs.is_empty() {
        return IntervalUnion::unit();
    }

    let mut points = vec![
        AlgebraicPoint::Rational(Rational::zero()),
        AlgebraicPoint::Rational(Rational::one()),
    ];
    for p in &diffs {
        let roots =
            isolate_roots_with_hints(p, eps, hints).expect("menu projects are pairwise distinct");
        for r in roots {
            insert_sorted(&mut points, r);
        }
    }

    let gap_member: Vec<bool> = (0..points.len() - 1)
        .map(|i| {
            let (left, right) = points.split_at_mut(i + 1);
            let s = sample_between(&mut left[i], &mut right[0]);
            diffs.iter().all(|p| p.sign_at(&s) != Ordering::Less)
        })
        .collect();
    let point_member: Vec<bool> = points
        .iter_mut()
        .map(|pt| diffs.iter().all(|p| pt.sign_of(p) != Ordering::Less))
        .collect();

    let mut intervals = Vec::new();
    let last = points.len() - 1;
    let mut i = 0;
    while i <= last {
        if !point_member[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < last && gap_member[i] {
            i += 1;
        }
        intervals.push(ClosedInterval {
            lo: points[start].clone(),
            hi: points[i].clone(),
        });
        i += 1;
    }
    IntervalUnion { intervals }
}

fn insert_sorted(points: &mut Vec<AlgebraicPoint>, mut r: AlgebraicPoint) {
    for i in 0..points.len() {
        match AlgebraicPoint::cmp_refine(&mut points[i], &mut r) {
            Ordering::Less => continue,
            Ordering::Equal => return,
            Ordering::Greater => {
                points.insert(i, r);
                return;
            }
        }
    }
    points.push(r);
}

/// A rational strictly between `a < b`, refining the enclosures until their
/// bounds separate.
fn sample_between(a: &mut AlgebraicPoint, b: &mut AlgebraicPoint) -> Rational {
    loop {
        let ua = a.upper();
        let lb = b.lower();
        let valid = ua < lb || (ua == lb && a.exact().is_none() && b.exact().is_none());
        if valid {
            return (ua + lb) / Rational::from_integer(2.into());
        }
        a.refine();
        b.refine();
    }
}

/// Measure of `set` under `tb`. Exact when every endpoint is rational;
/// otherwise a guaranteed enclosure obtained from the monotone CDF.
pub fn tb_measure(tb: &TieBreaker, set: &IntervalUnion) -> Probability {
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for iv in set.intervals() {
        if iv.is_point() {
            continue;
        }
        let inner = tb.cdf(iv.hi.lower()) - tb.cdf(iv.lo.upper());
        if inner > Rational::zero() {
            lo += inner;
        }
        hi += tb.cdf(iv.hi.upper()) - tb.cdf(iv.lo.lower());
    }
    Probability::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::tiebreaker::Piece;
    use crate::{int, rat};

    fn stream(v: &[i64]) -> PayoffStream {
        PayoffStream::new(v.iter().map(|&k| int(k)).collect()).unwrap()
    }

    fn tie_menu() -> Menu {
        Menu::new(vec![stream(&[1, 0]), stream(&[0, 2])]).unwrap()
    }

    #[test]
    fn maximizer_examples() {
        let d = tie_menu();
        assert_eq!(maximizer_set(&rat(1, 2), &d), vec![0, 1]);
        assert_eq!(maximizer_set(&int(0), &d), vec![0]);
        assert_eq!(maximizer_set(&int(1), &d), vec![1]);
    }

    #[test]
    fn cone_of_tie_example() {
        let d = tie_menu();
        let c = normal_cone(&d, &stream(&[1, 0])).unwrap();
        assert_eq!(c.as_rational().unwrap(), vec![(int(0), rat(1, 2))]);
        let c = normal_cone(&d, &stream(&[0, 2])).unwrap();
        assert_eq!(c.as_rational().unwrap(), vec![(rat(1, 2), int(1))]);
    }

    #[test]
    fn singleton_cone_is_everything() {
        let d = Menu::new(vec![stream(&[3, 1, 4])]).unwrap();
        assert_eq!(normal_cone(&d, &stream(&[3, 1, 4])).unwrap(), IntervalUnion::unit());
    }

    #[test]
    fn cone_requires_membership() {
        assert_eq!(
            normal_cone(&tie_menu(), &stream(&[9])),
            Err(Error::NotInMenu)
        );
    }

    #[test]
    fn isolated_tangency_point() {
        // x - y = (b - 1/2)^2 >= 0 everywhere, so y only wins at b = 1/2.
        let x = PayoffStream::new(vec![rat(1, 4), int(0), int(1)]).unwrap();
        let y = PayoffStream::new(vec![int(0), int(1)]).unwrap();
        let d = Menu::new(vec![x.clone(), y.clone()]).unwrap();
        assert_eq!(normal_cone(&d, &x).unwrap(), IntervalUnion::unit());
        let cy = normal_cone(&d, &y).unwrap();
        assert_eq!(cy.as_rational().unwrap(), vec![(rat(1, 2), rat(1, 2))]);
        assert!(tb_measure(&TieBreaker::uniform(), &cy).is_zero());
    }

    #[test]
    fn measures() {
        let u = TieBreaker::uniform();
        let half = IntervalUnion::from_rational(&[(int(0), rat(1, 2))]);
        assert_eq!(tb_measure(&u, &half), Probability::exact(rat(1, 2)));
        // Complement of the single tie point {1/2}.
        let off_tie = IntervalUnion::from_rational(&[(int(0), rat(1, 2)), (rat(1, 2), int(1))]);
        assert_eq!(tb_measure(&u, &off_tie), Probability::exact(int(1)));
        let tb = TieBreaker::new(vec![
            Piece {
                lo: rat(1, 8),
                hi: rat(1, 4),
                mass: rat(1, 3),
            },
            Piece {
                lo: rat(1, 2),
                hi: rat(3, 4),
                mass: rat(2, 3),
            },
        ])
        .unwrap();
        assert_eq!(tb_measure(&tb, &half), Probability::exact(rat(1, 3)));
    }

    #[test]
    fn irrational_cone_measure_encloses_truth() {
        // x = (1, 0, 0), y = (0, 0, 2): x >= y iff b <= 1/sqrt(2).
        let x = stream(&[1, 0, 0]);
        let y = stream(&[0, 0, 2]);
        let d = Menu::new(vec![x.clone(), y]).unwrap();
        let c = normal_cone(&d, &x).unwrap();
        let m = tb_measure(&TieBreaker::uniform(), &c);
        assert!(!m.is_exact());
        let truth = std::f64::consts::FRAC_1_SQRT_2;
        assert!(m.lo_f64() <= truth && truth <= m.hi_f64());
        assert!(m.hi_f64() - m.lo_f64() < 1e-11);
    }

    #[test]
    fn cover_detects_gaps() {
        let a = IntervalUnion::from_rational(&[(int(0), rat(1, 2))]);
        let b = IntervalUnion::from_rational(&[(rat(1, 2), int(1))]);
        let c = IntervalUnion::from_rational(&[(rat(3, 5), int(1))]);
        assert!(covers_unit(&[a.clone(), b]));
        assert!(!covers_unit(&[a, c]));
    }
}
