use super::walk::{edges_along, time_walk};
use crate::solution::{Algorithm, SolveError, SolveStats, Solution};
use crate::tvg::{Journey, NormalizedTvg, TemporalGraph, VertexId};

/// Vertices of a path graph from its lower-index endpoint, or `None` if the
/// graph is not a path.
pub fn path_order(tvg: &NormalizedTvg) -> Option<Vec<VertexId>> {
    let g = tvg.graph();
    let n = g.vertex_count();
    if g.edge_count() + 1 != n || (0..n).any(|v| g.degree(v) > 2) {
        return None;
    }
    let first = (0..n).find(|&v| g.degree(v) <= 1)?;
    let mut order = vec![first];
    let mut prev = usize::MAX;
    while let Some(&(w, _)) = g.neighbors(*order.last().unwrap()).iter().find(|&&(w, _)| w != prev) {
        prev = *order.last().unwrap();
        order.push(w);
    }
    (order.len() == n).then_some(order)
}

/// Exact DMVP on a path.
///
/// An optimal journey never turns around at a degree-2 vertex, so it heads for
/// one endpoint and then the other. Both candidates ("left first", towards the
/// lower-index endpoint, and "right first") are timed greedily in one pass over
/// the horizon; the earlier completion wins, ties going to left-first.
pub fn solve_path(tvg: &NormalizedTvg) -> Result<Solution, SolveError> {
    let order = path_order(tvg)
        .ok_or_else(|| SolveError::precondition("underlying graph is not a path"))?;
    let s = tvg.start();
    let k = order.iter().position(|&v| v == s).expect("start is on the path");
    let last = order.len() - 1;
    let mut stats = SolveStats::default();
    let mut best: Option<Journey> = None;
    for (first_end, second_end) in [(0, last), (last, 0)] {
        stats.candidates += 1;
        let mut vertices: Vec<VertexId> = Vec::new();
        push_range(&mut vertices, &order, k, first_end);
        if k != second_end {
            push_range(&mut vertices, &order, first_end, second_end);
        }
        vertices.dedup();
        let edges = edges_along(tvg, &vertices);
        let mut journey = Journey::empty(s, 0);
        if time_walk(tvg, &edges, 0, &mut journey.moves).is_some() {
            stats.states_expanded += edges.len() as u64;
            if best
                .as_ref()
                .is_none_or(|b| journey.arrival_time() < b.arrival_time())
            {
                best = Some(journey);
            }
        }
    }
    best.map(|j| Solution::from_journey(j, Algorithm::Path, stats))
        .ok_or_else(|| SolveError::Unreachable("neither sweep completes within the horizon".into()))
}

fn push_range(out: &mut Vec<VertexId>, order: &[VertexId], from: usize, to: usize) {
    if from <= to {
        out.extend_from_slice(&order[from..=to]);
    } else {
        out.extend(order[to..=from].iter().rev());
    }
}
