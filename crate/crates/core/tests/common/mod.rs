//! Helpers shared by the integration suites.
#![allow(dead_code)]

use dmvp::exact::{brute_force_cover, solve_brute_force_with, BruteForceLimits, CoverQuery};
use dmvp::generators::{gen_random_tvg, RandomParams, RandomShape};
use dmvp::tvg::{
    normalize, validate_journey, ClassKind, EdgeId, NormalizedTvg, Snapshot, TemporalGraph, TvgInstance, VertexId,
};
use dmvp::{SolveError, Solution};

/// Limits generous enough for every oracle call in the suites.
pub fn oracle_limits() -> BruteForceLimits {
    BruteForceLimits {
        state_bound: u64::MAX,
        max_stored_states: 200_000_000,
    }
}

/// `Some(cost)` for a solution, `None` for an unreachable instance; any other
/// error is returned as a message.
pub fn outcome(result: Result<Solution, SolveError>) -> Result<Option<u64>, String> {
    match result {
        Ok(sol) => Ok(Some(sol.cost)),
        Err(SolveError::Unreachable(_)) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

/// Brute-force optimum of a normalised instance.
pub fn oracle(tvg: &NormalizedTvg) -> Result<Option<u64>, String> {
    outcome(solve_brute_force_with(tvg, oracle_limits()))
}

/// Brute-force optimum from `start` at `start_time`, optionally ending at `finish_at`.
pub fn oracle_query<G: TemporalGraph>(
    g: &G,
    start: VertexId,
    start_time: usize,
    finish_at: Option<VertexId>,
) -> Result<Option<u64>, String> {
    let query = CoverQuery {
        start,
        start_time,
        finish_at,
    };
    outcome(brute_force_cover(g, query, oracle_limits()))
}

/// Checks that a solver's witness is a valid covering journey of the claimed cost.
pub fn check_witness(tvg: &NormalizedTvg, sol: &Solution) -> Result<(), String> {
    let report = validate_journey(tvg, &sol.journey);
    if !report.valid || !report.covers_all {
        return Err(format!("{} witness invalid: {report:?}", sol.algorithm));
    }
    if report.temporal_length != sol.cost {
        return Err(format!(
            "{} witness length {} differs from cost {}",
            sol.algorithm, report.temporal_length, sol.cost
        ));
    }
    Ok(())
}

/// Seeded random instance; panics on generator errors (parameters are fixed by the suites).
pub fn random(class: ClassKind, shape: RandomShape, n: usize, steps: usize, seed: u64) -> TvgInstance {
    let params = RandomParams {
        class,
        n,
        shape,
        snapshots: steps,
        ..RandomParams::default()
    };
    gen_random_tvg(&params, seed).expect("valid generator parameters")
}

pub fn random_with(params: RandomParams, seed: u64) -> TvgInstance {
    gen_random_tvg(&params, seed).expect("valid generator parameters")
}

pub fn normalized(instance: &TvgInstance) -> NormalizedTvg {
    normalize(instance)
}

/// No-turn conformance: the journey never reverses along an edge at a vertex
/// of degree 2 in the subgraph formed by the edges it uses.
pub fn never_turns_at_degree_two<G: TemporalGraph>(g: &G, sol: &Solution) -> Result<(), String> {
    let graph = g.graph();
    let mut used = vec![false; graph.edge_count()];
    for mv in &sol.journey.moves {
        used[mv.edge] = true;
    }
    let degree = |v: VertexId| graph.neighbors(v).iter().filter(|&&(_, e)| used[e]).count();
    let mut at = sol.journey.start;
    for pair in sol.journey.moves.windows(2) {
        at = graph.other_end(pair[0].edge, at).expect("walk");
        if pair[0].edge == pair[1].edge && degree(at) == 2 {
            return Err(format!("turns around on edge {} at degree-2 vertex {at}", pair[0].edge));
        }
    }
    Ok(())
}

/// The sub-instance induced by the vertices in `keep` (relabelled in
/// ascending order), starting at `start`, with the same snapshots.
pub fn induced(instance: &TvgInstance, keep: &[VertexId], start: VertexId) -> TvgInstance {
    let graph = instance.graph();
    let mut label = vec![usize::MAX; graph.vertex_count()];
    for (i, &v) in keep.iter().enumerate() {
        label[v] = i;
    }
    let mut edge_map: Vec<Option<EdgeId>> = vec![None; graph.edge_count()];
    let mut edges = Vec::new();
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        if label[u] != usize::MAX && label[v] != usize::MAX {
            edge_map[e] = Some(edges.len());
            edges.push((label[u], label[v]));
        }
    }
    let snapshots = instance
        .snapshots()
        .iter()
        .map(|s| Snapshot {
            duration: s.duration,
            active: s.active.iter().filter_map(|&e| edge_map[e]).collect(),
        })
        .collect();
    TvgInstance::new(keep.len(), edges, snapshots, label[start], None).expect("induced instance is valid")
}

/// Vertices of the subtree of `v` when the tree is rooted at `root`.
pub fn subtree(instance: &TvgInstance, root: VertexId, v: VertexId) -> Vec<VertexId> {
    let parent = instance.graph().bfs_parents(root);
    let n = instance.graph().vertex_count();
    let mut inside: Vec<VertexId> = (0..n)
        .filter(|&w| {
            let mut x = w;
            loop {
                if x == v {
                    return true;
                }
                match parent[x] {
                    Some((p, _)) => x = p,
                    None => return false,
                }
            }
        })
        .collect();
    inside.sort_unstable();
    inside
}
