//! General exact DMVP: Held-Karp style subset DP over foremost legs, and a
//! breadth-first brute-force search over `(vertex, visited set)` states that
//! serves as an independent oracle.

use std::collections::HashMap;

use crate::foremost::{append_foremost_leg, build_foremost_table, ForemostTable, UNREACHABLE};
use crate::solution::{Algorithm, SolveError, SolveStats, Solution};
use crate::tvg::{EdgeId, Journey, Move, NormalizedTvg, TemporalGraph, VertexId};

/// Largest vertex count accepted by the subset DP by default.
pub const SUBSET_DP_MAX_VERTICES: usize = 20;

/// Subset DP with the default vertex bound.
pub fn solve_exact_subset_dp(tvg: &NormalizedTvg) -> Result<Solution, SolveError> {
    let table = build_foremost_table(tvg);
    solve_exact_subset_dp_with(tvg, &table, SUBSET_DP_MAX_VERTICES)
}

/// Subset DP using a prebuilt foremost table.
///
/// `c[S][v]` is the earliest time at which every vertex of `S` (which always
/// contains the start `s`) has been visited and the agent stands at `v`, having
/// visited `v` last. Because the journey starts at time 0, `c[S][v]` is also the
/// departure index for the next foremost leg.
pub fn solve_exact_subset_dp_with(
    tvg: &NormalizedTvg,
    table: &ForemostTable,
    max_vertices: usize,
) -> Result<Solution, SolveError> {
    let graph = tvg.graph();
    let n = graph.vertex_count();
    if n > max_vertices {
        return Err(SolveError::BoundExceeded {
            what: "vertex count",
            limit: max_vertices as u64,
            actual: n as u64,
        });
    }
    let s = tvg.start();
    if n == 1 {
        return Ok(Solution::from_journey(
            Journey::empty(s, 0),
            Algorithm::Exact,
            SolveStats::default(),
        ));
    }
    let full = (1usize << n) - 1;
    let s_bit = 1usize << s;
    let mut cost = vec![UNREACHABLE; (full + 1) * n];
    let mut pred = vec![u8::MAX; (full + 1) * n];
    let mut stats = SolveStats::default();
    cost[s_bit * n + s] = 0;

    let mut masks: Vec<usize> = (0..=full).filter(|m| m & s_bit != 0 && *m != s_bit).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for &mask in &masks {
        for v in 0..n {
            if v == s || mask & (1 << v) == 0 {
                continue;
            }
            let prior = mask & !(1 << v);
            let (mut best, mut arg) = (UNREACHABLE, u8::MAX);
            for u in 0..n {
                if prior & (1 << u) == 0 || (u == s && prior != s_bit) {
                    continue;
                }
                let at = cost[prior * n + u];
                if at == UNREACHABLE {
                    continue;
                }
                stats.candidates += 1;
                if let Some(arrival) = table.arrival(at as usize, u, v) {
                    if (arrival as u32) < best {
                        best = arrival as u32;
                        arg = u as u8;
                    }
                }
            }
            if best != UNREACHABLE {
                stats.states_expanded += 1;
                cost[mask * n + v] = best;
                pred[mask * n + v] = arg;
            }
        }
    }

    let last = (0..n)
        .filter(|&v| v != s)
        .min_by_key(|&v| (cost[full * n + v], v))
        .expect("n >= 2");
    if cost[full * n + last] == UNREACHABLE {
        return Err(SolveError::Unreachable(
            "no visiting order completes within the horizon".into(),
        ));
    }

    let mut order = vec![last];
    let (mut mask, mut v) = (full, last);
    while mask != s_bit {
        let u = pred[mask * n + v] as usize;
        mask &= !(1 << v);
        v = u;
        order.push(v);
    }
    order.reverse();
    debug_assert_eq!(order[0], s);

    let mut journey = Journey::empty(s, 0);
    let mut now = 0usize;
    for pair in order.windows(2) {
        now = append_foremost_leg(table, graph, &mut journey, pair[0], pair[1], now)?;
    }
    debug_assert_eq!(now as u32, cost[full * n + last]);
    Ok(Solution::from_journey(journey, Algorithm::Exact, stats))
}

/// Guards for the brute-force oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceLimits {
    /// Refuse when `n * 2^n` exceeds this value. The default admits `n <= 16`.
    pub state_bound: u64,
    /// Abort once this many states have been stored across all time layers.
    pub max_stored_states: u64,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        BruteForceLimits {
            state_bound: 16 << 16,
            max_stored_states: 40_000_000,
        }
    }
}

impl BruteForceLimits {
    /// Limits that only refuse graphs too large for a 64-bit visited mask.
    pub fn unbounded() -> Self {
        BruteForceLimits {
            state_bound: u64::MAX,
            max_stored_states: u64::MAX,
        }
    }
}

/// What the brute-force search has to achieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverQuery {
    pub start: VertexId,
    pub start_time: usize,
    /// Require the agent to stand at this vertex once everything is visited.
    pub finish_at: Option<VertexId>,
}

/// Exact optimum by exhaustive search with the default limits.
pub fn solve_brute_force(tvg: &NormalizedTvg) -> Result<Solution, SolveError> {
    solve_brute_force_with(tvg, BruteForceLimits::default())
}

pub fn solve_brute_force_with(
    tvg: &NormalizedTvg,
    limits: BruteForceLimits,
) -> Result<Solution, SolveError> {
    let query = CoverQuery {
        start: tvg.start(),
        start_time: 0,
        finish_at: None,
    };
    brute_force_cover(tvg, query, limits)
}

const WAIT: u32 = u32::MAX;

/// Breadth-first search over time layers of `(vertex, visited set)` states.
///
/// Layer `t` holds every state reachable at time `t`; a state carries into the
/// next layer by waiting or by taking an edge present at `t`. The first layer
/// containing a goal state gives the optimum.
pub fn brute_force_cover<G: TemporalGraph + ?Sized>(
    tvg: &G,
    query: CoverQuery,
    limits: BruteForceLimits,
) -> Result<Solution, SolveError> {
    let graph = tvg.graph();
    let n = graph.vertex_count();
    if n > 64 {
        return Err(SolveError::BoundExceeded {
            what: "vertex count",
            limit: 64,
            actual: n as u64,
        });
    }
    let estimate = (n as u64).saturating_mul(1u64.checked_shl(n as u32).unwrap_or(u64::MAX));
    if estimate > limits.state_bound {
        return Err(SolveError::BoundExceeded {
            what: "state space n*2^n",
            limit: limits.state_bound,
            actual: estimate,
        });
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let is_goal = |v: VertexId, mask: u64| mask == full && query.finish_at.is_none_or(|f| f == v);
    let horizon = tvg.horizon() as usize;

    // per layer: states and back-pointers (index into previous layer, edge or WAIT)
    let mut layers: Vec<Vec<(VertexId, u64)>> = vec![vec![(query.start, 1u64 << query.start)]];
    let mut backs: Vec<Vec<(u32, u32)>> = vec![vec![(0, WAIT)]];
    let mut stats = SolveStats {
        states_expanded: 1,
        candidates: 0,
    };
    let mut stored = 1u64;
    let mut t = query.start_time;
    let found = loop {
        let current = layers.last().expect("non-empty");
        if let Some(i) = current.iter().position(|&(v, m)| is_goal(v, m)) {
            break Some(i);
        }
        if t >= horizon {
            break None;
        }
        let mut next: Vec<(VertexId, u64)> = Vec::with_capacity(current.len());
        let mut back: Vec<(u32, u32)> = Vec::with_capacity(current.len());
        let mut index: HashMap<(VertexId, u64), u32> = HashMap::with_capacity(current.len() * 2);
        let mut push = |state: (VertexId, u64), from: u32, via: u32| {
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(state) {
                e.insert(next.len() as u32);
                next.push(state);
                back.push((from, via));
            }
        };
        for (i, &(v, mask)) in current.iter().enumerate() {
            push((v, mask), i as u32, WAIT);
            for &(k, e) in graph.neighbors(v) {
                stats.candidates += 1;
                if tvg.is_present(e, t as u64) {
                    push((k, mask | (1u64 << k)), i as u32, e as u32);
                }
            }
        }
        stored += next.len() as u64;
        stats.states_expanded += next.len() as u64;
        if stored > limits.max_stored_states {
            return Err(SolveError::BoundExceeded {
                what: "stored search states",
                limit: limits.max_stored_states,
                actual: stored,
            });
        }
        layers.push(next);
        backs.push(back);
        t += 1;
    };

    let Some(mut i) = found else {
        return Err(SolveError::Unreachable(
            "no covering journey completes within the horizon".into(),
        ));
    };
    let mut moves = Vec::new();
    for layer in (1..layers.len()).rev() {
        let (from, via) = backs[layer][i];
        if via != WAIT {
            moves.push(Move {
                t: (query.start_time + layer - 1) as u64,
                edge: via as EdgeId,
            });
        }
        i = from as usize;
    }
    moves.reverse();
    let journey = Journey {
        start: query.start,
        start_time: query.start_time as u64,
        moves,
    };
    let cost = (layers.len() - 1) as u64;
    let mut solution = Solution::from_journey(journey, Algorithm::Brute, stats);
    solution.cost = cost;
    Ok(solution)
}
