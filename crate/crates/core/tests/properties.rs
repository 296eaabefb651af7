use num_traits::{One, Zero};
use proptest::prelude::*;
use randisc_core::aggregate::limit_rate;
use randisc_core::choice::{covers_unit, monte_carlo_rcr};
use randisc_core::poly::default_epsilon;
use randisc_core::sampling::{self, trial_rng};
use randisc_core::*;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig::with_cases(n)
}

fn exact(v: &[Scalar]) -> Vec<Rational> {
    v.iter().map(|s| s.as_exact().cloned().expect("exact")).collect()
}

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn rdu_is_linear_in_mixtures(seed in any::<u64>(), k in 0i64..=8) {
        let mut rng = trial_rng(seed, 0);
        let m = 1 + (seed % 4) as usize;
        let grid = sampling::grid(&mut rng, m);
        let p = sampling::belief(&mut rng, m, 5);
        let x = sampling::stream(&mut rng, 3);
        let y = sampling::stream(&mut rng, 4);
        let a = rat(k, 8);
        for w in [WeightingSpec::Identity, WeightingSpec::standard_gonzalez_wu()] {
            let ux = rdu_value(&grid, &p, &w, &x).unwrap();
            let uy = rdu_value(&grid, &p, &w, &y).unwrap();
            let umix = rdu_value(&grid, &p, &w, &x.mix(&y, &a)).unwrap();
            let lhs = &(&Scalar::Exact(a.clone()) * &ux) + &(&Scalar::Exact(Rational::one() - &a) * &uy);
            if w.is_identity() {
                prop_assert_eq!(umix, lhs);
            } else {
                prop_assert!((umix.to_f64() - lhs.to_f64()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rdu_is_monotone(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 1);
        let grid = sampling::grid(&mut rng, 3);
        let p = sampling::belief(&mut rng, 3, 5);
        let x = sampling::stream(&mut rng, 4);
        let bump = sampling::stream(&mut rng, 4);
        let y = PayoffStream::new(
            x.payoffs().iter().zip(bump.payoffs()).map(|(a, b)| a + b).collect(),
        ).unwrap();
        for w in [WeightingSpec::Identity, WeightingSpec::standard_gonzalez_wu()] {
            let ux = rdu_value(&grid, &p, &w, &x).unwrap().to_f64();
            let uy = rdu_value(&grid, &p, &w, &y).unwrap().to_f64();
            prop_assert!(uy >= ux - 1e-12);
        }
    }

    #[test]
    fn identity_decision_weights_are_the_belief(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 2);
        let p = sampling::belief(&mut rng, 5, 6);
        let dw = decision_weights(&p, &WeightingSpec::Identity);
        prop_assert_eq!(exact(&dw), p.probs().to_vec());
        let gw = decision_weights(&p, &WeightingSpec::standard_gonzalez_wu());
        let total: Rational = exact(&gw).iter().sum();
        prop_assert_eq!(total, Rational::one());
        prop_assert!(exact(&gw).iter().all(|d| *d >= Rational::zero()));
    }

    #[test]
    fn discount_curves_are_log_convex(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 3);
        let m = 2 + (seed % 3) as usize;
        let grid = sampling::grid(&mut rng, m);
        let beliefs = (0..2).map(|_| sampling::belief(&mut rng, m, 4)).collect();
        let profile = BeliefProfile::uniform(beliefs).unwrap();
        let ws = vec![WeightingSpec::Identity; 2];
        let ts = term_structure(Mode::ExAnte, &profile, &ws, &WeightingSpec::Identity, &grid, 40).unwrap();
        let d = exact(&ts.deltas);
        for t in 1..40 {
            prop_assert!(&d[t] * &d[t] <= &d[t - 1] * &d[t + 1]);
        }
        let r = exact(&ts.rates);
        for t in 1..r.len() {
            prop_assert!(r[t] <= r[t - 1]);
        }
    }

    #[test]
    fn gonzalez_wu_rates_never_rise(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 4);
        let grid = sampling::grid(&mut rng, 3);
        let beliefs = (0..2).map(|_| sampling::belief(&mut rng, 3, 4)).collect();
        let profile = BeliefProfile::uniform(beliefs).unwrap();
        let gw = WeightingSpec::standard_gonzalez_wu();
        for mode in Mode::ALL {
            let ts = term_structure(mode, &profile, &[gw.clone(), gw.clone()], &gw, &grid, 60).unwrap();
            for t in 1..ts.rates.len() {
                prop_assert!(ts.rates[t].to_f64() <= ts.rates[t - 1].to_f64() + 1e-12);
            }
        }
    }

    #[test]
    fn identity_weightings_agree_across_modes(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 5);
        let m = 2 + (seed % 3) as usize;
        let n = 1 + (seed % 3) as usize;
        let grid = sampling::grid(&mut rng, m);
        let beliefs = (0..n).map(|_| sampling::belief(&mut rng, m, 4)).collect();
        let profile = BeliefProfile::uniform(beliefs).unwrap();
        let ws = vec![WeightingSpec::Identity; n];
        let gap = consistency_gap(&profile, &ws, &WeightingSpec::Identity, &grid, 50).unwrap();
        prop_assert_eq!(gap, Scalar::zero());
    }

    #[test]
    fn long_run_rate_tends_to_largest_factor(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 6);
        let grid = sampling::grid(&mut rng, 3);
        let p = sampling::belief(&mut rng, 3, 4);
        let alpha = decision_weights(&p, &WeightingSpec::Identity);
        let limit = limit_rate(&alpha, &grid).unwrap();
        let far = rate_at(&alpha, &grid, 3000).unwrap().to_f64();
        let lim = num_traits::ToPrimitive::to_f64(&limit).unwrap();
        prop_assert!(far >= lim - 1e-12);
        prop_assert!(far - lim < 1e-6);
    }
}

proptest! {
    #![proptest_config(cases(48))]

    #[test]
    fn cones_cover_the_unit_interval(seed in any::<u64>(), size in 1usize..=5) {
        let mut rng = trial_rng(seed, 7);
        let menu = sampling::menu(&mut rng, size);
        let cones: Vec<IntervalUnion> = menu
            .projects()
            .iter()
            .map(|x| normal_cone(&menu, x).unwrap())
            .collect();
        prop_assert!(covers_unit(&cones));
        // A rational point in a cone is a maximizer there.
        for (i, cone) in cones.iter().enumerate() {
            for iv in cone.intervals() {
                if let (Some(lo), Some(hi)) = (iv.lo.exact(), iv.hi.exact()) {
                    let mid = (lo + hi) / rat(2, 1);
                    prop_assert!(maximizer_set(&mid, &menu).contains(&i));
                }
            }
        }
    }

    #[test]
    fn choice_probabilities_sum_to_one(seed in any::<u64>(), size in 1usize..=5) {
        let mut rng = trial_rng(seed, 8);
        let m = 1 + (seed % 4) as usize;
        let grid = sampling::grid(&mut rng, m);
        let p = sampling::belief(&mut rng, m, 5);
        let tb = sampling::tiebreaker(&mut rng);
        let menu = sampling::menu(&mut rng, size);
        let dist = rcr(&grid, &p, &tb, &menu).unwrap();
        let total = dist.total();
        prop_assert!(total.contains(&Rational::one()));
        if dist.is_exact() {
            prop_assert_eq!(total.value(), Some(&Rational::one()));
        }
        prop_assert!(dist.probabilities().iter().all(|q| q.lo >= Rational::zero()));
    }

    #[test]
    fn dominated_addition_changes_nothing(seed in any::<u64>(), size in 1usize..=4) {
        let mut rng = trial_rng(seed, 9);
        let grid = sampling::grid(&mut rng, 3);
        let p = sampling::belief(&mut rng, 3, 5);
        let tb = sampling::tiebreaker(&mut rng);
        let menu = sampling::menu(&mut rng, size);
        let base = &menu.projects()[0];
        prop_assume!(base.payoffs().iter().any(|v| !v.is_zero()));
        let z = PayoffStream::new(base.payoffs().iter().map(|v| v / rat(2, 1)).collect()).unwrap();
        let Ok(bigger) = menu.with(z.clone()) else { return Ok(()); };
        let before = rcr(&grid, &p, &tb, &menu).unwrap();
        let after = rcr(&grid, &p, &tb, &bigger).unwrap();
        prop_assert!(after.get(&z).unwrap().is_zero());
        for x in menu.projects() {
            prop_assert_eq!(before.get(x), after.get(x));
        }
    }

    #[test]
    fn rational_roots_are_recovered_exactly(a in 1i64..64, b in 1i64..64, c in 1i64..64) {
        let roots = [rat(a, 64), rat(b, 64), rat(c, 64)];
        let poly = Poly::from_roots(&roots);
        let found = isolate_roots(&poly, &default_epsilon()).unwrap();
        let mut expected: Vec<Rational> = roots.to_vec();
        expected.sort();
        expected.dedup();
        let got: Vec<Rational> = found.iter().map(|r| r.exact().cloned().expect("rational root")).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn isolated_roots_bracket_sign_changes(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 10);
        let x = sampling::stream(&mut rng, 4);
        let y = sampling::stream(&mut rng, 4);
        prop_assume!(!x.same_project(&y));
        let d = diff_polynomial(&x, &y);
        let roots = isolate_roots(&d, &default_epsilon()).unwrap();
        prop_assert_eq!(roots.len(), d.square_free().count_roots(&Rational::zero(), &Rational::one())
            + usize::from(d.eval(&Rational::zero()).is_zero()));
        for r in &roots {
            prop_assert!(r.width() <= default_epsilon());
            if r.exact().is_none() {
                prop_assert_ne!(d.sign_at(r.lower()), d.sign_at(r.upper()));
            }
        }
    }

    #[test]
    fn separating_menu_straddles_one_half(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 11);
        let m = 2 + (seed % 3) as usize;
        let n = 1 + (seed % 3) as usize;
        let grid = sampling::grid(&mut rng, m);
        let ps: Vec<Belief> = (0..n).map(|_| sampling::belief(&mut rng, m, 3)).collect();
        let qs: Vec<Belief> = ps.iter().map(|p| sampling::belief_distinct_from(&mut rng, p, 3)).collect();
        let cons = lemma1_construct(&grid, &ps, &qs).unwrap();
        let report = verify_lemma1(&cons, &ps, &qs).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
    }
}

#[test]
fn monte_carlo_agrees_with_exact_rule() {
    let grid = DiscountGrid::new(vec![rat(3, 4), rat(1, 2), rat(1, 4)]).unwrap();
    let p = Belief::new(vec![rat(1, 4), rat(1, 2), rat(1, 4)]).unwrap();
    let tb = TieBreaker::uniform();
    let x = PayoffStream::new(vec![rat(1, 2), rat(0, 1)]).unwrap();
    let y = PayoffStream::new(vec![rat(0, 1), rat(1, 1)]).unwrap();
    let z = PayoffStream::new(vec![rat(1, 4), rat(1, 2)]).unwrap();
    let menu = Menu::new(vec![x, y, z]).unwrap();
    let exact = rcr(&grid, &p, &tb, &menu).unwrap();
    let mc = monte_carlo_rcr(&grid, &p, &tb, &menu, 40_000, 9).unwrap();
    for (e, f) in exact.probabilities().iter().zip(&mc) {
        let v = e.mid_f64();
        let sd = (v * (1.0 - v) / 40_000.0).sqrt();
        assert!((v - f).abs() <= 4.0 * sd + 1e-9, "{v} vs {f}");
    }
}

#[test]
fn linear_rule_passes_common_mode_and_fails_free_mode() {
    let f = AggregatorSpec::linear(vec![rat(1, 2), rat(1, 2)]).unwrap();
    assert!(unanimity_check(&f, TieMode::Common, 100, 1).unwrap().is_pass());
    match unanimity_check(&f, TieMode::Free, 10, 1).unwrap() {
        UnanimityOutcome::Counterexample(c) => assert!(c.verify().unwrap()),
        UnanimityOutcome::Pass { .. } => panic!("free mode should fail"),
    }
}
