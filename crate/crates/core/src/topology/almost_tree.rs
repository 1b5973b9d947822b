use super::detect::{bridges, degree2_paths, TopologyInfo};
use super::walk::time_walk;
use crate::foremost::{append_foremost_leg, build_foremost_table_masked, ForemostTable, UNREACHABLE};
use crate::solution::{Algorithm, SolveError, SolveStats, Solution};
use crate::tvg::{EdgeId, Graph, Journey, NormalizedTvg, TemporalGraph, VertexId};

/// Size limits for [`solve_almost_tree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlmostTreeBounds {
    /// Maximum number of leaves of the underlying graph.
    pub max_leaves: usize,
    /// Maximum cycle rank `|E| - |V| + 1`.
    pub max_cycle_rank: usize,
    /// Maximum number of ordered elements in any candidate subgraph.
    pub max_elements: usize,
}

impl Default for AlmostTreeBounds {
    fn default() -> Self {
        AlmostTreeBounds {
            max_leaves: 12,
            max_cycle_rank: 3,
            max_elements: 16,
        }
    }
}

/// Something the agent must complete: reach a leaf, or traverse a chain end to end.
#[derive(Debug, Clone)]
struct Variant {
    element: usize,
    entry: VertexId,
    exit: VertexId,
    edges: Vec<EdgeId>,
}

/// Best journey found within one candidate spanning subgraph.
struct Candidate {
    journey: Journey,
    states: u64,
}

pub fn solve_almost_tree(tvg: &NormalizedTvg, info: &TopologyInfo) -> Result<Solution, SolveError> {
    solve_almost_tree_with(tvg, info, AlmostTreeBounds::default())
}

/// Exact DMVP on an `m`-leaf `c`-almost-tree.
///
/// The edge set actually used by an optimal journey (cut off at the moment it
/// completes coverage) is a connected spanning subgraph `H` obtained by deleting
/// at most `c` non-bridge edges. Within `H` an optimal journey never turns
/// around at a vertex of degree 2, so it reaches every leaf of `H` and runs
/// every cycle chain of `H` from one end to the other. For each candidate `H`
/// the solver orders these elements (leaves, and chains in either direction)
/// with a subset DP whose legs are foremost journeys restricted to `H`; chain
/// runs are timed greedily. The minimum over all candidates is optimal and
/// every candidate value is achievable, since legs never leave `H`.
pub fn solve_almost_tree_with(
    tvg: &NormalizedTvg,
    info: &TopologyInfo,
    bounds: AlmostTreeBounds,
) -> Result<Solution, SolveError> {
    let g = tvg.graph();
    let n = g.vertex_count();
    if info.leaves.len() > bounds.max_leaves {
        return Err(SolveError::BoundExceeded {
            what: "leaf count",
            limit: bounds.max_leaves as u64,
            actual: info.leaves.len() as u64,
        });
    }
    if info.cycle_rank > bounds.max_cycle_rank {
        return Err(SolveError::BoundExceeded {
            what: "cycle rank",
            limit: bounds.max_cycle_rank as u64,
            actual: info.cycle_rank as u64,
        });
    }
    let s = tvg.start();
    if n == 1 {
        return Ok(Solution::from_journey(
            Journey::empty(s, 0),
            Algorithm::AlmostTree,
            SolveStats::default(),
        ));
    }

    let removable: Vec<EdgeId> = bridges(g, None)
        .iter()
        .enumerate()
        .filter(|&(_, &b)| !b)
        .map(|(e, _)| e)
        .collect();
    let mut stats = SolveStats::default();
    let mut best: Option<Journey> = None;
    let mut any_unreachable = false;
    for size in 0..=info.cycle_rank.min(removable.len()) {
        for removed in combinations(&removable, size) {
            let mut keep = vec![true; g.edge_count()];
            for &e in &removed {
                keep[e] = false;
            }
            if !g.is_connected_with(&keep) || is_pure_cycle(g, &keep) {
                continue;
            }
            stats.candidates += 1;
            match solve_subgraph(tvg, &keep, bounds.max_elements)? {
                Some(c) => {
                    stats.states_expanded += c.states;
                    if best
                        .as_ref()
                        .is_none_or(|b| c.journey.arrival_time() < b.arrival_time())
                    {
                        best = Some(c.journey);
                    }
                }
                None => any_unreachable = true,
            }
        }
    }
    match best {
        Some(j) => Ok(Solution::from_journey(j, Algorithm::AlmostTree, stats)),
        None => {
            debug_assert!(any_unreachable);
            Err(SolveError::Unreachable(
                "no candidate subgraph admits a covering journey within the horizon".into(),
            ))
        }
    }
}

fn is_pure_cycle(g: &Graph, keep: &[bool]) -> bool {
    let n = g.vertex_count();
    n >= 3
        && (0..n).all(|v| g.neighbors(v).iter().filter(|&&(_, e)| keep[e]).count() == 2)
}

/// All `size`-element subsets of `items` in lexicographic order.
fn combinations(items: &[EdgeId], size: usize) -> Vec<Vec<EdgeId>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(items: &[EdgeId], from: usize, size: usize, cur: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            rec(items, i + 1, size, cur, out);
            cur.pop();
        }
    }
    rec(items, 0, size, &mut current, &mut out);
    out
}

/// Optimal element ordering inside the spanning subgraph `keep`; `None` if
/// nothing completes within the horizon.
fn solve_subgraph(
    tvg: &NormalizedTvg,
    keep: &[bool],
    max_elements: usize,
) -> Result<Option<Candidate>, SolveError> {
    let g = tvg.graph();
    let s = tvg.start();
    let n = g.vertex_count();
    let bridge = bridges(g, Some(keep));
    let mut variants: Vec<Variant> = Vec::new();
    let mut elements = 0;
    for v in 0..n {
        let degree = g.neighbors(v).iter().filter(|&&(_, e)| keep[e]).count();
        if degree == 1 && v != s {
            variants.push(Variant {
                element: elements,
                entry: v,
                exit: v,
                edges: Vec::new(),
            });
            elements += 1;
        }
    }
    for chain in degree2_paths(g, Some(keep)) {
        if bridge[chain.edges[0]] {
            continue;
        }
        let reversed: Vec<EdgeId> = chain.edges.iter().rev().copied().collect();
        variants.push(Variant {
            element: elements,
            entry: chain.first(),
            exit: chain.last(),
            edges: chain.edges.clone(),
        });
        variants.push(Variant {
            element: elements,
            entry: chain.last(),
            exit: chain.first(),
            edges: reversed,
        });
        elements += 1;
    }
    if elements > max_elements {
        return Err(SolveError::BoundExceeded {
            what: "ordered element count",
            limit: max_elements as u64,
            actual: elements as u64,
        });
    }
    let table = build_foremost_table_masked(tvg, Some(keep));
    if elements == 0 {
        return Ok(Some(Candidate {
            journey: Journey::empty(s, 0),
            states: 0,
        }));
    }

    let steps = tvg.total_steps();
    // run[v][t]: arrival after running variant v's chain from its entry at step t
    let mut scratch = Vec::new();
    let run: Vec<Vec<u32>> = variants
        .iter()
        .map(|var| {
            (0..=steps)
                .map(|t| {
                    scratch.clear();
                    time_walk(tvg, &var.edges, t, &mut scratch).map_or(UNREACHABLE, |a| a as u32)
                })
                .collect()
        })
        .collect();
    let complete = |table: &ForemostTable, from: VertexId, t: usize, var: usize| -> u32 {
        match table.arrival(t, from, variants[var].entry) {
            Some(a) if a <= steps => run[var][a],
            _ => UNREACHABLE,
        }
    };

    let nv = variants.len();
    let full = (1usize << elements) - 1;
    let mut cost = vec![UNREACHABLE; (full + 1) * nv];
    let mut pred = vec![u16::MAX; (full + 1) * nv];
    let mut states = 0u64;
    for (vi, var) in variants.iter().enumerate() {
        let c = complete(&table, s, 0, vi);
        if c != UNREACHABLE {
            cost[(1 << var.element) * nv + vi] = c;
            states += 1;
        }
    }
    for mask in 1..=full {
        for (vj, var) in variants.iter().enumerate() {
            let bit = 1 << var.element;
            if mask & bit == 0 || mask == bit {
                continue;
            }
            let prior = mask & !bit;
            let (mut best, mut arg) = (UNREACHABLE, u16::MAX);
            for (vi, prev) in variants.iter().enumerate() {
                let at = cost[prior * nv + vi];
                if prior & (1 << prev.element) == 0 || at == UNREACHABLE {
                    continue;
                }
                let c = complete(&table, prev.exit, at as usize, vj);
                if c < best {
                    best = c;
                    arg = vi as u16;
                }
            }
            if best != UNREACHABLE {
                states += 1;
                cost[mask * nv + vj] = best;
                pred[mask * nv + vj] = arg;
            }
        }
    }
    let Some(last) = (0..nv)
        .filter(|&v| cost[full * nv + v] != UNREACHABLE)
        .min_by_key(|&v| (cost[full * nv + v], v))
    else {
        return Ok(None);
    };

    let mut order = vec![last];
    let mut mask = full;
    let mut v = last;
    while mask != 1 << variants[v].element {
        let u = pred[mask * nv + v] as usize;
        mask &= !(1 << variants[v].element);
        v = u;
        order.push(v);
    }
    order.reverse();

    let mut journey = Journey::empty(s, 0);
    let (mut at, mut now) = (s, 0usize);
    for vi in order {
        let var = &variants[vi];
        now = append_foremost_leg(&table, g, &mut journey, at, var.entry, now)?;
        now = time_walk(tvg, &var.edges, now, &mut journey.moves)
            .expect("the DP only keeps completing runs");
        at = var.exit;
    }
    debug_assert_eq!(now as u32, cost[full * nv + last]);
    Ok(Some(Candidate { journey, states }))
}
