use super::walk::{edges_along, time_walk};
use crate::solution::{Algorithm, SolveError, SolveStats, Solution};
use crate::tvg::{Journey, NormalizedTvg, TemporalGraph, VertexId};

/// Vertices of a cycle graph starting at the start vertex and continuing
/// towards its lower-index neighbour, or `None` if the graph is not a cycle.
pub fn cycle_order(tvg: &NormalizedTvg) -> Option<Vec<VertexId>> {
    let g = tvg.graph();
    let n = g.vertex_count();
    if n < 3 || g.edge_count() != n || (0..n).any(|v| g.degree(v) != 2) || !g.is_connected() {
        return None;
    }
    let s = tvg.start();
    let mut order = vec![s];
    let mut prev = s;
    let mut at = g.neighbors(s)[0].0;
    while at != s {
        order.push(at);
        let next = g
            .neighbors(at)
            .iter()
            .map(|&(w, _)| w)
            .find(|&w| w != prev)
            .expect("degree 2");
        prev = at;
        at = next;
    }
    Some(order)
}

/// Exact DMVP on a cycle `v_0 .. v_{N-1}` with `v_0` the start.
///
/// For every final vertex `v_k` there are two walks that never turn around at
/// a degree-2 vertex of their own edge set:
/// * go backwards from `v_0` to `v_{k+1}`, turn, and go forwards through `v_0` to `v_k`;
/// * go forwards from `v_0` to `v_{k-1}`, turn, and go backwards through `v_0` to `v_k`.
///
/// Each of the `2(N-1)` walks is timed greedily and the earliest completion wins
/// (ties: smaller `k`, then the backwards-first walk).
pub fn solve_cycle(tvg: &NormalizedTvg) -> Result<Solution, SolveError> {
    let ring = cycle_order(tvg)
        .ok_or_else(|| SolveError::precondition("underlying graph is not a cycle"))?;
    let n = ring.len();
    let at = |i: usize| ring[i % n];
    let mut stats = SolveStats::default();
    let mut best: Option<Journey> = None;
    for k in 1..n {
        // backwards to v_{k+1}, then forwards to v_k
        let mut a: Vec<VertexId> = (k + 1..=n).rev().map(at).collect();
        a.extend((k + 2..=n).map(at));
        a.extend((1..=k).map(at));
        // forwards to v_{k-1}, then backwards to v_k
        let mut b: Vec<VertexId> = (0..k).map(at).collect();
        b.extend((0..k - 1).rev().map(at));
        b.extend((k..n).rev().map(at));
        for walk in [a, b] {
            stats.candidates += 1;
            debug_assert_eq!(walk[0], ring[0]);
            let edges = edges_along(tvg, &walk);
            let mut journey = Journey::empty(ring[0], 0);
            if time_walk(tvg, &edges, 0, &mut journey.moves).is_some() {
                stats.states_expanded += edges.len() as u64;
                if best
                    .as_ref()
                    .is_none_or(|j| journey.arrival_time() < j.arrival_time())
                {
                    best = Some(journey);
                }
            }
        }
    }
    best.map(|j| Solution::from_journey(j, Algorithm::Cycle, stats))
        .ok_or_else(|| SolveError::Unreachable("no candidate walk completes within the horizon".into()))
}
