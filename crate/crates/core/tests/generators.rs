mod common;

use common::{oracle_query, random_with};
use dmvp::generators::{
    gen_3partition_comb, gen_3partition_spider, gen_hamiltonian_p2, gen_setcover_comb, gen_setcover_star, Gadget,
    RandomParams, RandomShape,
};
use dmvp::tvg::{classify, parse_instance, ClassKind, TemporalGraph, TvgInstance};

fn optimum(instance: &TvgInstance) -> Option<u64> {
    oracle_query(instance, instance.start(), 0, None).expect("oracle within limits")
}

/// All sequences of `len` non-empty subsets of `1..=m`.
fn families(m: usize, len: usize) -> Vec<Vec<Vec<usize>>> {
    let subsets: Vec<Vec<usize>> = (1..1usize << m)
        .map(|mask| (1..=m).filter(|&j| mask & (1 << (j - 1)) != 0).collect())
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|f: Vec<Vec<usize>>| {
                subsets.iter().map(move |s| {
                    let mut g = f.clone();
                    g.push(s.clone());
                    g
                })
            })
            .collect();
    }
    out
}

fn has_cover(m: usize, sets: &[Vec<usize>], k: usize) -> bool {
    (0..1usize << sets.len()).any(|pick| {
        pick.count_ones() as usize <= k
            && (1..=m).all(|j| (0..sets.len()).any(|i| pick & (1 << i) != 0 && sets[i].contains(&j)))
    })
}

fn assert_round_trip(g: &Gadget) {
    let back = parse_instance(&g.instance.to_json()).expect("generated instance parses");
    assert_eq!(back, g.instance);
    assert!(g.instance.graph().is_connected());
}

#[test]
fn setcover_star_decides_set_cover() {
    let mut checked = 0;
    for m in 1..=3 {
        for len in 1..=3 {
            if m == 3 && len == 3 {
                continue;
            }
            for sets in families(m, len) {
                for k in 1..=len {
                    let g = gen_setcover_star(m, &sets, k).unwrap();
                    assert_round_trip(&g);
                    let within = optimum(&g.instance).is_some_and(|c| c <= g.deadline);
                    assert_eq!(within, has_cover(m, &sets, k), "m={m} sets={sets:?} k={k}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn setcover_comb_decides_set_cover() {
    for m in 1..=2 {
        for len in 1..=2 {
            for sets in families(m, len) {
                for k in 1..=len {
                    let g = gen_setcover_comb(m, &sets, k).unwrap();
                    assert_round_trip(&g);
                    let within = optimum(&g.instance).is_some_and(|c| c <= g.deadline);
                    assert_eq!(within, has_cover(m, &sets, k), "m={m} sets={sets:?} k={k}");
                }
            }
        }
    }
}

fn has_hamiltonian_path(n: usize, edges: &[(usize, usize)], v0: usize) -> bool {
    fn extend(at: usize, seen: &mut Vec<bool>, left: usize, adj: &[Vec<bool>]) -> bool {
        if left == 0 {
            return true;
        }
        for next in 0..adj.len() {
            if adj[at][next] && !seen[next] {
                seen[next] = true;
                if extend(next, seen, left - 1, adj) {
                    return true;
                }
                seen[next] = false;
            }
        }
        false
    }
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut seen = vec![false; n];
    seen[v0] = true;
    extend(v0, &mut seen, n - 1, &adj)
}

#[test]
fn hamiltonian_gadget_decides_hamiltonian_path() {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
    for mask in 0..1u32 << pairs.len() {
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask & (1 << i) != 0).map(|i| pairs[i]).collect();
        for v0 in 0..4 {
            let g = gen_hamiltonian_p2(4, &edges, v0, None).unwrap();
            let opt = optimum(&g.instance);
            assert!(opt.is_none_or(|c| c >= g.deadline), "below 2n-1: {edges:?} from {v0}");
            assert_eq!(
                opt == Some(g.deadline),
                has_hamiltonian_path(4, &edges, v0),
                "edges {edges:?} from {v0}: optimum {opt:?}"
            );
        }
    }
}

#[test]
fn hamiltonian_gadget_is_period_two() {
    let g = gen_hamiltonian_p2(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)], 0, None).unwrap();
    assert_round_trip(&g);
    assert!(classify(&g.instance).has_period(2));
}

#[test]
fn partition_gadgets_round_trip() {
    assert_round_trip(&gen_3partition_spider(&[1; 6], 2, None).unwrap());
    assert_round_trip(&gen_3partition_spider(&[1, 1, 2, 1, 1, 2], 3, None).unwrap());
    let comb = gen_3partition_comb(&[1; 6], 2, None).unwrap();
    assert_round_trip(&comb);
    assert!(dmvp::topology::detect_topology(comb.instance.graph()).is_comb);
}

#[test]
fn partition_spider_valid_and_invalid() {
    let valid = gen_3partition_spider(&[1; 6], 2, None).unwrap();
    assert_eq!(optimum(&valid.instance), Some(valid.deadline));
    let invalid = gen_3partition_spider(&[1, 1, 1, 1, 1, 7], 2, None).unwrap();
    assert!(optimum(&invalid.instance).is_none_or(|c| c > invalid.deadline));
}

#[test]
fn random_instances_satisfy_their_class() {
    for seed in 0..60u64 {
        for shape in [RandomShape::General, RandomShape::Tree, RandomShape::Spider, RandomShape::Comb] {
            let n = 3 + (seed % 6) as usize;
            let base = RandomParams {
                n,
                shape,
                snapshots: 12,
                ..RandomParams::default()
            };
            let r = random_with(RandomParams { class: ClassKind::R, ..base }, seed);
            assert!(classify(&r).is_r);
            for delta in 2..=3 {
                let b = random_with(RandomParams { class: ClassKind::B, delta, ..base }, seed);
                assert!(classify(&b).min_delta_observed.is_some_and(|d| d <= delta));
            }
            for period in 1..=3 {
                let p = random_with(RandomParams { class: ClassKind::P, period, ..base }, seed);
                assert!(classify(&p).has_period(period));
            }
            assert_eq!(parse_instance(&r.to_json()).unwrap(), r);
            assert!(r.graph().is_connected());
        }
    }
}

#[test]
fn random_generation_is_deterministic() {
    let params = RandomParams {
        class: ClassKind::P,
        period: 2,
        ..RandomParams::default()
    };
    assert_eq!(random_with(params, 1), random_with(params, 1));
}
