use serde::Serialize;

use super::spider::{spider_arms, SpiderArm};
use crate::solution::SolveError;
use crate::tvg::{EdgeId, Journey, Move, NormalizedTvg, TemporalGraph, VertexId};

/// Outcome of the wait-free decision on a spider with equal-length arms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoWaitDecision {
    /// Whether a covering journey of temporal length `budget` exists.
    pub feasible: bool,
    /// Length of a shortest static covering walk from the start.
    pub budget: u64,
    /// A covering journey of length `budget` when one exists (normalised time).
    pub witness: Option<Journey>,
}

/// Whether `edges` can be crossed back to back starting at step `t`.
fn no_wait(tvg: &NormalizedTvg, edges: &[EdgeId], t: usize) -> bool {
    edges.iter().enumerate().all(|(i, &e)| tvg.present(e, t + i))
}

fn push_moves(edges: &[EdgeId], t: usize, moves: &mut Vec<Move>) {
    moves.extend(edges.iter().enumerate().map(|(i, &e)| Move {
        t: (t + i) as u64,
        edge: e,
    }));
}

/// Kuhn's augmenting-path bipartite matching; `ok[a][b]` says arm `a` fits block `b`.
fn perfect_matching(ok: &[Vec<bool>]) -> Option<Vec<usize>> {
    fn augment(a: usize, ok: &[Vec<bool>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for b in 0..ok[a].len() {
            if ok[a][b] && !seen[b] {
                seen[b] = true;
                if owner[b].is_none_or(|other| augment(other, ok, seen, owner)) {
                    owner[b] = Some(a);
                    return true;
                }
            }
        }
        false
    }
    let blocks = ok.first().map_or(0, Vec::len);
    let mut owner = vec![None; blocks];
    for a in 0..ok.len() {
        if !augment(a, ok, &mut vec![false; blocks], &mut owner) {
            return None;
        }
    }
    Some(owner.into_iter().map(|a| a.expect("perfect matching")).collect())
}

/// Decides whether a spider whose arms all have length `l` can be covered
/// without ever waiting, in exactly the static optimum `2(|V| - 1) - l - d`
/// steps, where `d` is the start's distance to the centre.
///
/// Such a journey must first finish the start's own arm (to its leaf, then
/// back to the centre), after which the other arms occupy consecutive blocks
/// of `2l` steps, the last one only `l` steps as it does not return. Each
/// arm either fits a block wait-free or not, so the question is a perfect
/// bipartite matching between arms and blocks.
///
/// A path with an even number of edges is a spider with two arms centred at
/// its midpoint.
pub fn decide_uniform_spider_no_wait(tvg: &NormalizedTvg) -> Result<NoWaitDecision, SolveError> {
    let g = tvg.graph();
    let n = g.vertex_count();
    if g.edge_count() + 1 != n || n < 3 {
        return Err(SolveError::precondition("underlying graph is not a spider with at least two arms"));
    }
    let high: Vec<VertexId> = (0..n).filter(|&v| g.degree(v) > 2).collect();
    let center = match high.as_slice() {
        [c] => *c,
        [] => {
            let leaf = (0..n).find(|&v| g.degree(v) == 1).expect("a path has leaves");
            if !(n - 1).is_multiple_of(2) {
                return Err(SolveError::precondition("a path with an odd number of edges has no uniform centre"));
            }
            let arm = &spider_arms(g, leaf)[0];
            arm.vertices[(n - 1) / 2 - 1]
        }
        _ => return Err(SolveError::precondition("underlying graph is not a spider")),
    };
    let arms: Vec<SpiderArm> = spider_arms(g, center);
    let l = arms[0].len();
    if arms.iter().any(|a| a.len() != l) {
        return Err(SolveError::precondition("spider arms do not all have the same length"));
    }

    let s = tvg.start();
    let mut own_prefix: Vec<EdgeId> = Vec::new();
    let mut others: Vec<usize> = (0..arms.len()).collect();
    let mut depth = 0;
    if s != center {
        let (own, i) = arms
            .iter()
            .enumerate()
            .find_map(|(a, arm)| arm.vertices.iter().position(|&v| v == s).map(|i| (a, i)))
            .expect("every vertex but the centre lies on an arm");
        depth = i + 1;
        own_prefix.extend_from_slice(&arms[own].edges[depth..]);
        own_prefix.extend(arms[own].edges.iter().rev());
        others.retain(|&a| a != own);
    }
    let budget = (2 * (n - 1) - l - depth) as u64;

    let t0 = own_prefix.len();
    let blocks = others.len();
    let round_trip = |arm: &SpiderArm| -> Vec<EdgeId> { arm.edges.iter().chain(arm.edges.iter().rev()).copied().collect() };
    let block_edges = |arm: &SpiderArm, b: usize| -> Vec<EdgeId> {
        if b + 1 == blocks {
            arm.edges.clone()
        } else {
            round_trip(arm)
        }
    };
    let fits: Vec<Vec<bool>> = others
        .iter()
        .map(|&a| (0..blocks).map(|b| no_wait(tvg, &block_edges(&arms[a], b), t0 + 2 * l * b)).collect())
        .collect();

    let assignment = if no_wait(tvg, &own_prefix, 0) {
        perfect_matching(&fits)
    } else {
        None
    };
    let witness = assignment.map(|owner| {
        let mut journey = Journey::empty(s, 0);
        push_moves(&own_prefix, 0, &mut journey.moves);
        for (b, &k) in owner.iter().enumerate() {
            push_moves(&block_edges(&arms[others[k]], b), t0 + 2 * l * b, &mut journey.moves);
        }
        debug_assert_eq!(journey.temporal_length(), budget);
        journey
    });
    Ok(NoWaitDecision {
        feasible: witness.is_some(),
        budget,
        witness,
    })
}
