//! All-pairs, all-start-times foremost journeys.
//!
//! `d[t][u][v]` is the temporal length of the foremost journey from `u` to `v`
//! departing at or after step `t`. The table is filled backwards from `t = T'`
//! where every distinct pair is unreachable: at step `t` the agent either waits
//! one step or takes an edge `(u, k)` present at `t` and continues from `k` at
//! `t + 1`.

use thiserror::Error;

use crate::tvg::{EdgeId, Journey, Move, NormalizedTvg, TemporalGraph, VertexId};

/// Sentinel strictly larger than any feasible length; additions saturate on it.
pub const UNREACHABLE: u32 = u32::MAX;

const NEXT_NONE: u32 = u32::MAX;
const NEXT_WAIT: u32 = u32::MAX - 1;

/// First action of a foremost journey.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Wait,
    Take(EdgeId),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("vertex {to} is unreachable from {from} departing at or after step {t}")]
pub struct Unreachable {
    pub from: VertexId,
    pub to: VertexId,
    pub t: usize,
}

#[derive(Debug, Clone)]
pub struct ForemostTable {
    n: usize,
    steps: usize,
    dist: Vec<u32>,
    next: Vec<u32>,
}

impl ForemostTable {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `T'`; valid `t` for [`Self::dist`] is `0..=T'`.
    pub fn steps(&self) -> usize {
        self.steps
    }

    #[inline]
    fn idx(&self, t: usize, u: VertexId, v: VertexId) -> usize {
        (t * self.n + u) * self.n + v
    }

    #[inline]
    pub fn dist(&self, t: usize, u: VertexId, v: VertexId) -> u32 {
        self.dist[self.idx(t, u, v)]
    }

    /// Earliest arrival at `v` leaving `u` at or after `t`, or `None`.
    pub fn arrival(&self, t: usize, u: VertexId, v: VertexId) -> Option<usize> {
        if t > self.steps {
            return (u == v).then_some(t);
        }
        match self.dist(t, u, v) {
            UNREACHABLE => None,
            d => Some(t + d as usize),
        }
    }

    /// First action for `(t, u, v)`, `None` when `u == v` or unreachable.
    pub fn next(&self, t: usize, u: VertexId, v: VertexId) -> Option<Action> {
        if t >= self.steps {
            return None;
        }
        match self.next[self.idx(t, u, v)] {
            NEXT_NONE => None,
            NEXT_WAIT => Some(Action::Wait),
            e => Some(Action::Take(e as EdgeId)),
        }
    }
}

/// Builds the table over every edge of the instance.
pub fn build_foremost_table(tvg: &NormalizedTvg) -> ForemostTable {
    build_foremost_table_masked(tvg, None)
}

/// Builds the table using only edges with `mask[e] == true` (all edges if `None`).
pub fn build_foremost_table_masked(tvg: &NormalizedTvg, mask: Option<&[bool]>) -> ForemostTable {
    let graph = tvg.graph();
    let n = graph.vertex_count();
    let steps = tvg.total_steps();
    let layer = n * n;
    let mut dist = vec![UNREACHABLE; (steps + 1) * layer];
    let mut next = vec![NEXT_NONE; steps * layer];
    for u in 0..n {
        dist[steps * layer + u * n + u] = 0;
    }
    // edges present at t from u, ascending edge index
    let mut moves: Vec<(EdgeId, VertexId)> = Vec::new();
    for t in (0..steps).rev() {
        let (head, tail) = dist.split_at_mut((t + 1) * layer);
        let cur = &mut head[t * layer..];
        let later = &tail[..layer];
        for u in 0..n {
            moves.clear();
            moves.extend(
                graph
                    .neighbors(u)
                    .iter()
                    .filter(|&&(_, e)| mask.is_none_or(|m| m[e]) && tvg.present(e, t))
                    .map(|&(k, e)| (e, k)),
            );
            moves.sort_unstable();
            for v in 0..n {
                let slot = u * n + v;
                if u == v {
                    cur[slot] = 0;
                    continue;
                }
                let mut best = later[slot].saturating_add(1);
                let mut choice = if best == UNREACHABLE { NEXT_NONE } else { NEXT_WAIT };
                for &(e, k) in &moves {
                    let cand = later[k * n + v].saturating_add(1);
                    if cand < best || (cand == best && choice == NEXT_WAIT) {
                        best = cand;
                        choice = e as u32;
                    }
                }
                cur[slot] = best;
                next[t * layer + slot] = choice;
            }
        }
    }
    ForemostTable {
        n,
        steps,
        dist,
        next,
    }
}

/// Reconstructs the foremost journey from `u` to `v` departing at or after `t`.
pub fn foremost_journey(
    table: &ForemostTable,
    graph: &crate::tvg::Graph,
    u: VertexId,
    v: VertexId,
    t: usize,
) -> Result<Journey, Unreachable> {
    let mut journey = Journey::empty(u, t as u64);
    append_foremost_leg(table, graph, &mut journey, u, v, t)?;
    Ok(journey)
}

/// Appends the foremost leg `u -> v` departing at or after `t` to `journey`
/// and returns the arrival step.
pub(crate) fn append_foremost_leg(
    table: &ForemostTable,
    graph: &crate::tvg::Graph,
    journey: &mut Journey,
    u: VertexId,
    v: VertexId,
    t: usize,
) -> Result<usize, Unreachable> {
    let err = Unreachable { from: u, to: v, t };
    let arrival = table.arrival(t, u, v).ok_or(err)?;
    let (mut at, mut now) = (u, t);
    while at != v {
        match table.next(now, at, v) {
            Some(Action::Wait) => {}
            Some(Action::Take(e)) => {
                journey.moves.push(Move { t: now as u64, edge: e });
                at = graph.other_end(e, at).expect("table edge is incident");
            }
            None => unreachable!("finite table entry without a successor"),
        }
        now += 1;
    }
    debug_assert_eq!(now, arrival);
    Ok(arrival)
}

/// Convenience wrapper using the instance's own graph.
pub fn foremost_journey_in(
    tvg: &NormalizedTvg,
    table: &ForemostTable,
    u: VertexId,
    v: VertexId,
    t: usize,
) -> Result<Journey, Unreachable> {
    foremost_journey(table, tvg.graph(), u, v, t)
}
