mod common;

use common::random;
use dmvp::foremost::{build_foremost_table, foremost_journey_in, UNREACHABLE};
use dmvp::generators::RandomShape;
use dmvp::tvg::{normalize, validate_journey, ClassKind, NormalizedTvg, TemporalGraph};

/// Earliest arrival at every vertex leaving `u` at or after `t`, by forward
/// simulation of the reachable set.
fn earliest_arrivals(tvg: &NormalizedTvg, u: usize, t: usize) -> Vec<Option<usize>> {
    let g = tvg.graph();
    let n = g.vertex_count();
    let mut arrival = vec![None; n];
    arrival[u] = Some(t);
    let mut reached = vec![false; n];
    reached[u] = true;
    for now in t..tvg.total_steps() {
        let mut next = reached.clone();
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if tvg.present(e, now) {
                for (x, y) in [(a, b), (b, a)] {
                    if reached[x] && !next[y] {
                        next[y] = true;
                        arrival[y] = Some(now + 1);
                    }
                }
            }
        }
        reached = next;
    }
    arrival
}

fn instances() -> impl Iterator<Item = NormalizedTvg> {
    (0..100u64).map(|seed| {
        let class = [ClassKind::R, ClassKind::B, ClassKind::P][(seed % 3) as usize];
        let shape = [RandomShape::General, RandomShape::Tree, RandomShape::Cycle][(seed / 3 % 3) as usize];
        let n = 3 + (seed % 4) as usize;
        normalize(&random(class, shape, n, 5, seed))
    })
}

#[test]
fn table_matches_forward_search() {
    for tvg in instances() {
        assert!(tvg.total_steps() <= 15);
        let table = build_foremost_table(&tvg);
        let n = tvg.graph().vertex_count();
        for t in 0..=tvg.total_steps() {
            for u in 0..n {
                let expected = earliest_arrivals(&tvg, u, t);
                for v in 0..n {
                    assert_eq!(table.arrival(t, u, v), expected[v], "t={t} u={u} v={v}");
                }
            }
        }
    }
}

#[test]
fn waiting_one_step_costs_at_most_one() {
    for tvg in instances() {
        let table = build_foremost_table(&tvg);
        let n = tvg.graph().vertex_count();
        for t in 0..tvg.total_steps() {
            for u in 0..n {
                for v in 0..n {
                    let later = table.dist(t + 1, u, v);
                    if later != UNREACHABLE {
                        assert!(table.dist(t, u, v) <= later + 1);
                    }
                }
            }
        }
    }
}

#[test]
fn reconstructed_journeys_validate() {
    for tvg in instances() {
        let table = build_foremost_table(&tvg);
        let n = tvg.graph().vertex_count();
        for t in 0..tvg.total_steps() {
            for u in 0..n {
                for v in 0..n {
                    match foremost_journey_in(&tvg, &table, u, v, t) {
                        Ok(j) => {
                            let r = validate_journey(&tvg, &j);
                            assert!(r.valid);
                            assert_eq!(j.arrival_time() as usize, table.arrival(t, u, v).unwrap());
                            assert_eq!(j.vertices(&tvg).last().copied(), Some(v));
                        }
                        Err(_) => assert_eq!(table.dist(t, u, v), UNREACHABLE),
                    }
                }
            }
        }
    }
}
