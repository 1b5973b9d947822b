use crate::solution::{Algorithm, SolveError, SolveStats, Solution};
use crate::topology::{detect_topology, greedy_timing};
use crate::tvg::{EdgeId, Graph, NormalizedTvg, TemporalGraph, VertexId};

/// Vertices of the branch leaving `from` through `first`, in walk order, if
/// that branch is a bare path (no vertex of degree > 2).
fn pure_branch(g: &Graph, from: VertexId, first: VertexId) -> Option<Vec<VertexId>> {
    let mut branch = vec![first];
    let (mut prev, mut at) = (from, first);
    loop {
        match g.degree(at) {
            1 => return Some(branch),
            2 => {
                let &(next, _) = g.neighbors(at).iter().find(|&&(w, _)| w != prev)?;
                branch.push(next);
                prev = at;
                at = next;
            }
            _ => return None,
        }
    }
}

fn edge(g: &Graph, u: VertexId, v: VertexId) -> EdgeId {
    g.edge_between(u, v).expect("consecutive walk vertices are adjacent")
}

/// Appends an out-and-back excursion from `from` along the path `branch`.
fn push_round_trip(g: &Graph, from: VertexId, branch: &[VertexId], walk: &mut Vec<EdgeId>) {
    let mut path = vec![from];
    path.extend_from_slice(branch);
    let out: Vec<EdgeId> = path.windows(2).map(|w| edge(g, w[0], w[1])).collect();
    walk.extend(out.iter().copied());
    walk.extend(out.iter().rev().copied());
}

/// The online comb walk from `start`: a fixed topological order that needs no
/// knowledge of future presence.
///
/// The start must be a backbone end: a leaf, or a degree-2 vertex with a bare
/// path hanging off one side. The walk first finishes that path (returning),
/// then runs along the backbone, and at each backbone vertex covers its tooth
/// out and back before moving on. The backbone runs through every degree-3
/// vertex and continues past the last one along its longer remaining branch
/// (lower neighbour on ties), where the walk ends.
pub fn comb_online_walk(g: &Graph, start: VertexId) -> Result<Vec<EdgeId>, SolveError> {
    let info = detect_topology(g);
    if !info.is_comb {
        return Err(SolveError::precondition("underlying graph is not a comb"));
    }
    let mut walk = Vec::new();
    let main = match g.degree(start) {
        0 => return Ok(walk),
        1 => g.neighbors(start)[0].0,
        2 => {
            let [(a, _), (b, _)] = [g.neighbors(start)[0], g.neighbors(start)[1]];
            let (arm, main) = match (pure_branch(g, start, a), pure_branch(g, start, b)) {
                (Some(pa), Some(pb)) => {
                    if (pb.len(), b) < (pa.len(), a) {
                        (pb, a)
                    } else {
                        (pa, b)
                    }
                }
                (Some(pa), None) => (pa, b),
                (None, Some(pb)) => (pb, a),
                (None, None) => {
                    return Err(SolveError::precondition(format!(
                        "start {start} lies strictly inside the backbone"
                    )))
                }
            };
            push_round_trip(g, start, &arm, &mut walk);
            main
        }
        _ => {
            return Err(SolveError::precondition(format!(
                "start {start} is a branch vertex of the comb"
            )))
        }
    };

    // Backbone: follow the main branch through every degree-3 vertex.
    let high = (0..g.vertex_count()).filter(|&v| g.degree(v) > 2).count();
    let mut backbone = vec![start];
    let (mut prev, mut at) = (start, main);
    let mut seen_high = 0;
    loop {
        backbone.push(at);
        if g.degree(at) > 2 {
            seen_high += 1;
        }
        let onward: Vec<VertexId> = g.neighbors(at).iter().map(|&(w, _)| w).filter(|&w| w != prev).collect();
        if onward.is_empty() {
            break;
        }
        let next = if seen_high == high {
            // past the last branch vertex: continue along the longer branch
            if g.degree(at) > 2 {
                let branches: Vec<(usize, VertexId)> = onward
                    .iter()
                    .map(|&w| (pure_branch(g, at, w).map_or(0, |b| b.len()), w))
                    .collect();
                let longest = branches.iter().map(|b| b.0).max().expect("non-empty");
                branches.iter().find(|b| b.0 == longest).expect("non-empty").1
            } else {
                onward[0]
            }
        } else {
            let forward: Vec<VertexId> = onward
                .iter()
                .copied()
                .filter(|&w| pure_branch(g, at, w).is_none())
                .collect();
            match forward.as_slice() {
                [w] => *w,
                _ => {
                    return Err(SolveError::precondition(format!(
                        "start {start} is not at an end of the comb backbone"
                    )))
                }
            }
        };
        prev = at;
        at = next;
    }

    for i in 1..backbone.len() {
        let v = backbone[i];
        walk.push(edge(g, backbone[i - 1], v));
        if i + 1 < backbone.len() {
            let (before, after) = (backbone[i - 1], backbone[i + 1]);
            for &(w, _) in g.neighbors(v) {
                if w != before && w != after {
                    let tooth = pure_branch(g, v, w).expect("teeth of a comb are bare paths");
                    push_round_trip(g, v, &tooth, &mut walk);
                }
            }
        }
    }
    Ok(walk)
}

/// Times [`comb_online_walk`] greedily: every edge is crossed at its first
/// presence after arrival.
pub fn solve_comb_online(tvg: &NormalizedTvg) -> Result<Solution, SolveError> {
    let s = tvg.start();
    let walk = comb_online_walk(tvg.graph(), s)?;
    let journey = greedy_timing(tvg, s, 0, &walk).ok_or_else(|| {
        SolveError::Unreachable("the online comb walk does not complete within the horizon".into())
    })?;
    let stats = SolveStats {
        states_expanded: walk.len() as u64,
        candidates: 1,
    };
    Ok(Solution::from_journey(journey, Algorithm::CombOnline, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tvg::{normalize, validate_journey, Snapshot, TvgInstance};

    /// Backbone 0-1-2-3-4 with teeth 1-5-6 and 3-7.
    fn comb() -> Vec<(usize, usize)> {
        vec![(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6), (3, 7)]
    }

    fn static_tvg(n: usize, edges: Vec<(usize, usize)>, start: usize) -> NormalizedTvg {
        let m = edges.len();
        let snaps = vec![Snapshot {
            duration: 4 * n as u64,
            active: (0..m).collect(),
        }];
        normalize(&TvgInstance::new(n, edges, snaps, start, None).unwrap())
    }

    #[test]
    fn walk_covers_comb_from_leaf() {
        let tvg = static_tvg(8, comb(), 0);
        let sol = solve_comb_online(&tvg).unwrap();
        let r = validate_journey(&tvg, &sol.journey);
        assert!(r.valid && r.covers_all);
        // teeth of length 2 and 1 walked twice, backbone once
        assert_eq!(sol.cost, 4 + 2 * 3);
    }

    #[test]
    fn walk_from_degree_two_backbone_end() {
        // extend with a bare path 8-0 so that 0 has degree 2
        let mut edges = comb();
        edges.push((8, 0));
        let tvg = static_tvg(9, edges, 0);
        let walk = comb_online_walk(tvg.graph(), 0).unwrap();
        assert_eq!(walk.len(), 2 + 4 + 6);
        let sol = solve_comb_online(&tvg).unwrap();
        assert!(validate_journey(&tvg, &sol.journey).covers_all);
    }

    #[test]
    fn rejects_interior_start() {
        let tvg = static_tvg(8, comb(), 2);
        assert!(matches!(comb_online_walk(tvg.graph(), 2), Err(SolveError::Precondition(_))));
    }
}
