use crate::tvg::{EdgeId, Journey, Move, NormalizedTvg, TemporalGraph, VertexId};

/// Times a fixed walk greedily: each edge is taken at the first step, no
/// earlier than the previous arrival, at which it is present.
///
/// Appends the moves and returns the arrival step, or `None` if some edge is
/// not present again before the horizon. For a fixed edge sequence the greedy
/// timing arrives no later than any other timing.
pub fn time_walk(
    tvg: &NormalizedTvg,
    edges: &[EdgeId],
    start_time: usize,
    moves: &mut Vec<Move>,
) -> Option<usize> {
    let horizon = tvg.total_steps();
    let mut now = start_time;
    for &e in edges {
        while now < horizon && !tvg.present(e, now) {
            now += 1;
        }
        if now >= horizon {
            return None;
        }
        moves.push(Move { t: now as u64, edge: e });
        now += 1;
    }
    Some(now)
}

/// Greedy timing of the walk `edges` from `start` as a standalone journey.
pub fn greedy_timing(
    tvg: &NormalizedTvg,
    start: VertexId,
    start_time: usize,
    edges: &[EdgeId],
) -> Option<Journey> {
    debug_assert!(is_walk(tvg, start, edges));
    let mut journey = Journey::empty(start, start_time as u64);
    time_walk(tvg, edges, start_time, &mut journey.moves)?;
    Some(journey)
}

fn is_walk(tvg: &NormalizedTvg, start: VertexId, edges: &[EdgeId]) -> bool {
    let mut at = start;
    edges.iter().all(|&e| match tvg.graph().other_end(e, at) {
        Some(w) => {
            at = w;
            true
        }
        None => false,
    })
}

/// Edge sequence along consecutive vertices of `vertices`.
pub(crate) fn edges_along(tvg: &NormalizedTvg, vertices: &[VertexId]) -> Vec<EdgeId> {
    vertices
        .windows(2)
        .map(|w| {
            tvg.graph()
                .edge_between(w[0], w[1])
                .expect("consecutive vertices are adjacent")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tvg::{normalize, validate_journey, Snapshot, TvgInstance};

    #[test]
    fn waits_for_each_edge() {
        let inst = TvgInstance::new(
            3,
            vec![(0, 1), (1, 2)],
            vec![
                Snapshot { duration: 1, active: vec![1] },
                Snapshot { duration: 1, active: vec![0] },
                Snapshot { duration: 1, active: vec![0] },
                Snapshot { duration: 1, active: vec![1] },
            ],
            0,
            None,
        )
        .unwrap();
        let tvg = normalize(&inst);
        let j = greedy_timing(&tvg, 0, 0, &[0, 1]).unwrap();
        assert_eq!(j.moves, vec![Move { t: 1, edge: 0 }, Move { t: 3, edge: 1 }]);
        assert!(validate_journey(&tvg, &j).valid);
        assert!(greedy_timing(&tvg, 0, 0, &[0, 1, 1]).is_none());
    }
}
