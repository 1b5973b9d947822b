mod common;

use common::{check_witness, oracle, outcome, random_with};
use dmvp::generators::{RandomParams, RandomShape};
use dmvp::periodic::{
    comb_online_walk, decide_uniform_spider_no_wait, solve_comb_online, solve_spider_fixed_p, solve_tree_p2,
};
use dmvp::tvg::{normalize, validate_journey, ClassKind, Snapshot, TemporalGraph, TvgInstance};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Spider with `arms` arms of length `l` around vertex 0 and random unit-step presence.
fn uniform_spider(arms: usize, l: usize, steps: usize, density: f64, seed: u64) -> TvgInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut next = 1;
    for _ in 0..arms {
        let mut prev = 0;
        for _ in 0..l {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    let snapshots = (0..steps)
        .map(|_| Snapshot {
            duration: 1,
            active: (0..edges.len()).filter(|_| rng.gen_bool(density)).collect(),
        })
        .collect();
    let start = rng.gen_range(0..next);
    TvgInstance::new(next, edges, snapshots, start, None).unwrap()
}

#[test]
fn uniform_no_wait_matches_oracle() {
    let mut feasible = 0;
    for seed in 0..300u64 {
        let arms = 2 + (seed % 3) as usize;
        let l = 1 + (seed / 3 % 2) as usize;
        let n = arms * l + 1;
        let inst = uniform_spider(arms, l, 2 * n, 0.75, seed);
        let tvg = normalize(&inst);
        let d = decide_uniform_spider_no_wait(&tvg).unwrap();
        let opt = oracle(&tvg).unwrap();
        if let Some(c) = opt {
            assert!(c >= d.budget, "seed {seed}: optimum {c} below static bound {}", d.budget);
        }
        assert_eq!(d.feasible, opt == Some(d.budget), "seed {seed}: decision {d:?}, optimum {opt:?}");
        if let Some(j) = &d.witness {
            let r = validate_journey(&tvg, j);
            assert!(r.valid && r.covers_all);
            assert_eq!(r.temporal_length, d.budget);
            assert!(j.moves.windows(2).all(|w| w[1].t == w[0].t + 1), "witness waits");
            feasible += 1;
        }
    }
    assert!(feasible > 10, "only {feasible} feasible instances");
}

#[test]
fn comb_online_walk_is_valid_and_never_beats_the_optimum() {
    let mut checked = 0;
    for seed in 0..150u64 {
        let n = 4 + (seed % 6) as usize;
        let base = random_with(
            RandomParams {
                class: ClassKind::B,
                n,
                shape: RandomShape::Comb,
                snapshots: 8 * n,
                delta: 2,
                ..RandomParams::default()
            },
            seed,
        );
        for s in 0..n {
            if comb_online_walk(base.graph(), s).is_err() {
                continue;
            }
            let tvg = normalize(&base.clone().with_start(s).unwrap());
            let opt = oracle(&tvg).unwrap();
            match solve_comb_online(&tvg) {
                Ok(sol) => {
                    check_witness(&tvg, &sol).unwrap();
                    assert!(opt.is_some_and(|o| o <= sol.cost));
                }
                Err(e) => assert!(matches!(e, dmvp::SolveError::Unreachable(_)), "{e}"),
            }
            checked += 1;
        }
    }
    assert!(checked > 150);
}

fn periodic_tree(shape: RandomShape, n: usize, period: u64, seed: u64) -> TvgInstance {
    random_with(
        RandomParams {
            class: ClassKind::P,
            n,
            shape,
            snapshots: 6 * n,
            period,
            density_percent: 50,
            ..RandomParams::default()
        },
        seed,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn p2_tree_matches_oracle(n in 3usize..=9, seed in any::<u64>()) {
        let tvg = normalize(&periodic_tree(RandomShape::Tree, n, 2, seed));
        let result = solve_tree_p2(&tvg);
        if let Ok(sol) = &result {
            check_witness(&tvg, sol).unwrap();
        }
        prop_assert_eq!(outcome(result).unwrap(), oracle(&tvg).unwrap());
    }

    #[test]
    fn spider_fixed_p_matches_oracle(n in 3usize..=9, p in 1u64..=4, seed in any::<u64>()) {
        let tvg = normalize(&periodic_tree(RandomShape::Spider, n, p, seed));
        let result = solve_spider_fixed_p(&tvg, p as usize);
        if let Ok(sol) = &result {
            check_witness(&tvg, sol).unwrap();
        }
        prop_assert_eq!(outcome(result).unwrap(), oracle(&tvg).unwrap());
    }

    #[test]
    fn auto_dispatch_matches_oracle(
        n in 2usize..=7,
        class in prop::sample::select(vec![ClassKind::R, ClassKind::B, ClassKind::P]),
        shape in prop::sample::select(vec![
            RandomShape::General, RandomShape::Path, RandomShape::Cycle, RandomShape::Tree,
            RandomShape::Spider, RandomShape::Comb, RandomShape::AlmostTree(1),
        ]),
        seed in any::<u64>(),
    ) {
        let shape = match shape {
            RandomShape::Cycle if n < 3 => RandomShape::Path,
            RandomShape::AlmostTree(_) if n < 4 => RandomShape::Tree,
            s => s,
        };
        let inst = random_with(RandomParams { class, n, shape, snapshots: 3 * n, ..RandomParams::default() }, seed);
        let tvg = normalize(&inst);
        let got = outcome(dmvp::solve(&inst, &Default::default())).unwrap();
        let reference = outcome(
            dmvp::exact::solve_brute_force_with(&tvg, common::oracle_limits()).map(|s| s.restore(&tvg)),
        ).unwrap();
        prop_assert_eq!(got, reference);
    }
}
