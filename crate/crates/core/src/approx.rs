//! Approximations for graphs whose edges recur within every window of `delta`
//! steps: the static tree walk timed online (ratio `delta`) and an online
//! depth-first traversal of a BFS spanning tree (ratio `2 * delta`).

use crate::solution::{Algorithm, SolveError, SolveStats, Solution};
use crate::tvg::{EdgeId, Graph, Journey, Move, NormalizedTvg, TemporalGraph, VertexId};

/// Optimal static covering walk of a tree from `s`, with cost `2(n-1) - ecc(s)`.
///
/// Depth-first, children in ascending index order, except that the child whose
/// subtree holds the farthest vertex from `s` (lowest index among ties) is
/// visited last and never left again.
pub fn static_tree_mvp(g: &Graph, s: VertexId) -> (usize, Vec<EdgeId>) {
    let n = g.vertex_count();
    debug_assert_eq!(g.edge_count() + 1, n, "static_tree_mvp needs a tree");
    let dist = g.bfs_distances(s);
    let far = (0..n).max_by_key(|&v| (dist[v], std::cmp::Reverse(v))).unwrap_or(s);
    let parent = g.bfs_parents(s);
    let mut on_far_path = vec![false; n];
    let mut v = far;
    on_far_path[v] = true;
    while let Some((p, _)) = parent[v] {
        on_far_path[p] = true;
        v = p;
    }

    let mut walk = Vec::with_capacity(2 * n);
    // (vertex, edge to parent, index of next child to explore)
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(s, None, 0)];
    let children = |v: VertexId| -> Vec<(VertexId, EdgeId)> {
        let mut c: Vec<(VertexId, EdgeId)> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&(w, _)| parent[w].map(|(p, _)| p) == Some(v))
            .collect();
        // the branch towards the farthest vertex goes last
        c.sort_by_key(|&(w, _)| (on_far_path[w], w));
        c
    };
    let kids: Vec<Vec<(VertexId, EdgeId)>> = (0..n).map(children).collect();
    while let Some(&mut (v, up, ref mut i)) = stack.last_mut() {
        if let Some(&(w, e)) = kids[v].get(*i) {
            *i += 1;
            walk.push(e);
            stack.push((w, Some(e), 0));
        } else {
            stack.pop();
            if let Some(e) = up {
                if on_far_path[v] {
                    // the far branch is the last one; the walk ends at `far`
                    break;
                }
                walk.push(e);
            }
        }
    }
    (walk.len(), walk)
}

/// Times `edges` from `start` greedily, failing if any single wait exceeds
/// `delta - 1` steps before the edge appears.
fn time_with_recurrence(
    tvg: &NormalizedTvg,
    start: VertexId,
    edges: &[EdgeId],
    delta: u64,
) -> Result<Journey, SolveError> {
    let horizon = tvg.total_steps();
    let mut journey = Journey::empty(start, 0);
    let mut now = 0usize;
    for &e in edges {
        let mut t = now;
        while t < horizon && !tvg.present(e, t) {
            if (t - now) as u64 + 1 > delta.saturating_sub(1) {
                return Err(SolveError::RecurrenceViolation {
                    edge: e,
                    t: now as u64,
                    limit: delta,
                });
            }
            t += 1;
        }
        if t >= horizon {
            return Err(SolveError::Unreachable(format!(
                "edge {e} is not present again before the horizon {horizon}"
            )));
        }
        journey.moves.push(Move { t: t as u64, edge: e });
        now = t + 1;
    }
    Ok(journey)
}

fn check_delta(delta: u64) -> Result<(), SolveError> {
    if delta == 0 {
        Err(SolveError::precondition("recurrence bound delta must be at least 1"))
    } else {
        Ok(())
    }
}

/// Follows [`static_tree_mvp`]'s walk, waiting for each edge. When every edge
/// recurs within `delta` steps the cost is at most `delta` times the static
/// optimum, hence at most `delta` times the temporal optimum.
pub fn approx_delta_tree(tvg: &NormalizedTvg, delta: u64) -> Result<Solution, SolveError> {
    check_delta(delta)?;
    let g = tvg.graph();
    if g.edge_count() + 1 != g.vertex_count() {
        return Err(SolveError::precondition("underlying graph is not a tree"));
    }
    let (_, walk) = static_tree_mvp(g, tvg.start());
    let journey = time_with_recurrence(tvg, tvg.start(), &walk, delta)?;
    let stats = SolveStats {
        states_expanded: walk.len() as u64,
        candidates: 1,
    };
    Ok(Solution::from_journey(journey, Algorithm::TreeBApprox, stats))
}

/// Depth-first traversal of the BFS tree rooted at the start (lowest-index
/// ties, children in ascending order), stopping once every vertex is visited
/// and waiting for each edge as needed. With recurrence bound `delta` the cost
/// is at most `(2n - 3) * delta`.
pub fn approx_spanning_traversal(tvg: &NormalizedTvg, delta: u64) -> Result<Solution, SolveError> {
    check_delta(delta)?;
    let g = tvg.graph();
    let n = g.vertex_count();
    let s = tvg.start();
    let parent = g.bfs_parents(s);
    let mut kids: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
    for v in 0..n {
        if let Some((p, e)) = parent[v] {
            kids[p].push((v, e));
        }
    }
    for k in &mut kids {
        k.sort_unstable();
    }
    let mut walk = Vec::with_capacity(2 * n);
    let mut visited = 1usize;
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(s, None, 0)];
    while visited < n {
        let Some(&mut (v, up, ref mut i)) = stack.last_mut() else {
            break;
        };
        if let Some(&(w, e)) = kids[v].get(*i) {
            *i += 1;
            walk.push(e);
            visited += 1;
            stack.push((w, Some(e), 0));
        } else {
            stack.pop();
            walk.push(up.expect("the root is left only after every vertex is visited"));
        }
    }
    let journey = time_with_recurrence(tvg, s, &walk, delta)?;
    let stats = SolveStats {
        states_expanded: walk.len() as u64,
        candidates: 1,
    };
    Ok(Solution::from_journey(journey, Algorithm::SpanningApprox, stats))
}
