use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use randisc_core::poly::default_epsilon;
use randisc_core::sampling::{self, trial_rng};
use randisc_core::{
    diff_polynomial, isolate_roots, lemma1_construct, rat, rcr, term_structure, Belief,
    BeliefProfile, DiscountGrid, Mode, Poly, WeightingSpec,
};

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("isolate_roots");
    for degree in [3usize, 6, 10] {
        let rs: Vec<_> = (1..=degree as i64).map(|k| rat(k, degree as i64 + 2)).collect();
        let p = Poly::from_roots(&rs);
        let eps = default_epsilon();
        group.bench_with_input(BenchmarkId::from_parameter(degree), &p, |b, p| {
            b.iter(|| isolate_roots(black_box(p), &eps).unwrap())
        });
    }
    let mut rng = trial_rng(1, 0);
    let x = sampling::stream(&mut rng, 8);
    let y = sampling::stream(&mut rng, 8);
    let p = diff_polynomial(&x, &y);
    let eps = default_epsilon();
    group.bench_function("random_difference", |b| b.iter(|| isolate_roots(black_box(&p), &eps).unwrap()));
    group.finish();
}

fn choice(c: &mut Criterion) {
    let mut group = c.benchmark_group("rcr");
    for size in [2usize, 4, 6] {
        let mut rng = trial_rng(2, size as u64);
        let grid = sampling::grid(&mut rng, 4);
        let p = sampling::belief(&mut rng, 4, 4);
        let tb = sampling::tiebreaker(&mut rng);
        let menu = sampling::menu(&mut rng, size);
        group.bench_with_input(BenchmarkId::from_parameter(size), &menu, |b, menu| {
            b.iter(|| rcr(&grid, &p, &tb, black_box(menu)).unwrap())
        });
    }
    group.finish();
}

fn two_group_profile() -> (DiscountGrid, BeliefProfile) {
    let grid = DiscountGrid::new(vec![rat(25, 26), rat(5, 6)]).unwrap();
    let a = Belief::new(vec![rat(3, 4), rat(1, 4)]).unwrap();
    let b = Belief::new(vec![rat(1, 8), rat(7, 8)]).unwrap();
    (grid, BeliefProfile::uniform(vec![a, b]).unwrap())
}

fn curves(c: &mut Criterion) {
    let (grid, profile) = two_group_profile();
    let mut group = c.benchmark_group("term_structure");
    for (name, w) in [
        ("identity", WeightingSpec::Identity),
        ("gw", WeightingSpec::standard_gonzalez_wu()),
    ] {
        let ws = vec![w.clone(); profile.len()];
        for mode in Mode::ALL {
            let id = format!("{name}/{}", mode.tag());
            group.bench_function(id, |b| {
                b.iter(|| term_structure(mode, &profile, &ws, &w, &grid, black_box(100)).unwrap())
            });
        }
    }
    group.finish();
}

fn separating(c: &mut Criterion) {
    let mut group = c.benchmark_group("lemma1_construct");
    for (m, n) in [(2usize, 2usize), (4, 3), (6, 5)] {
        let mut rng = trial_rng(4, (m * 10 + n) as u64);
        let grid = sampling::grid(&mut rng, m);
        let ps: Vec<Belief> = (0..n).map(|_| sampling::belief(&mut rng, m, 4)).collect();
        let qs: Vec<Belief> = ps.iter().map(|p| sampling::belief_distinct_from(&mut rng, p, 4)).collect();
        group.bench_function(format!("m{m}_n{n}"), |b| {
            b.iter(|| lemma1_construct(&grid, black_box(&ps), &qs).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, roots, choice, curves, separating);
criterion_main!(benches);
