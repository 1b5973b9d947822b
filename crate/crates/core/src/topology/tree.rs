use super::detect::TopologyInfo;
use crate::foremost::{append_foremost_leg, build_foremost_table, ForemostTable, UNREACHABLE};
use crate::solution::{Algorithm, SolveError, SolveStats, Solution};
use crate::tvg::{Journey, NormalizedTvg, TemporalGraph, VertexId};

/// Largest number of ordered leaves accepted by the leaf DP.
pub const TREE_MAX_LEAVES: usize = 20;

/// Exact DMVP on a tree by ordering its leaves.
///
/// A journey covers a tree as soon as it has visited every leaf, and between
/// two consecutive first leaf visits a foremost leg is never worse. So a subset
/// DP over leaves (the start is excluded when it is itself a leaf) with
/// foremost legs between them gives the optimum.
pub fn solve_tree_leaf_dp(tvg: &NormalizedTvg, info: &TopologyInfo) -> Result<Solution, SolveError> {
    let table = build_foremost_table(tvg);
    solve_tree_leaf_dp_with(tvg, info, &table)
}

pub fn solve_tree_leaf_dp_with(
    tvg: &NormalizedTvg,
    info: &TopologyInfo,
    table: &ForemostTable,
) -> Result<Solution, SolveError> {
    if !info.is_tree {
        return Err(SolveError::precondition("underlying graph is not a tree"));
    }
    let s = tvg.start();
    let leaves: Vec<VertexId> = info.leaves.iter().copied().filter(|&l| l != s).collect();
    let (order, stats) = order_targets(table, s, &leaves, TREE_MAX_LEAVES, "leaf count")?;
    let mut journey = Journey::empty(s, 0);
    let mut now = 0;
    let mut at = s;
    for v in order {
        now = append_foremost_leg(table, tvg.graph(), &mut journey, at, v, now)?;
        at = v;
    }
    Ok(Solution::from_journey(journey, Algorithm::Tree, stats))
}

/// Subset DP choosing the visiting order of `targets` from `s` at time 0 that
/// minimises the arrival at the last target, with foremost legs in between.
/// Ties resolve to the lower target position.
pub(crate) fn order_targets(
    table: &ForemostTable,
    s: VertexId,
    targets: &[VertexId],
    max_targets: usize,
    what: &'static str,
) -> Result<(Vec<VertexId>, SolveStats), SolveError> {
    let m = targets.len();
    if m > max_targets {
        return Err(SolveError::BoundExceeded {
            what,
            limit: max_targets as u64,
            actual: m as u64,
        });
    }
    let mut stats = SolveStats::default();
    if m == 0 {
        return Ok((Vec::new(), stats));
    }
    let full = (1usize << m) - 1;
    let mut cost = vec![UNREACHABLE; (full + 1) * m];
    let mut pred = vec![u8::MAX; (full + 1) * m];
    for (i, &x) in targets.iter().enumerate() {
        stats.candidates += 1;
        if let Some(a) = table.arrival(0, s, x) {
            cost[(1 << i) * m + i] = a as u32;
            stats.states_expanded += 1;
        }
    }
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        for j in 0..m {
            if mask & (1 << j) == 0 {
                continue;
            }
            let prior = mask & !(1 << j);
            let (mut best, mut arg) = (UNREACHABLE, u8::MAX);
            for i in 0..m {
                if prior & (1 << i) == 0 || cost[prior * m + i] == UNREACHABLE {
                    continue;
                }
                stats.candidates += 1;
                if let Some(a) = table.arrival(cost[prior * m + i] as usize, targets[i], targets[j]) {
                    if (a as u32) < best {
                        best = a as u32;
                        arg = i as u8;
                    }
                }
            }
            if best != UNREACHABLE {
                stats.states_expanded += 1;
                cost[mask * m + j] = best;
                pred[mask * m + j] = arg;
            }
        }
    }
    let last = (0..m)
        .min_by_key(|&j| (cost[full * m + j], j))
        .expect("m >= 1");
    if cost[full * m + last] == UNREACHABLE {
        return Err(SolveError::Unreachable(
            "no visiting order completes within the horizon".into(),
        ));
    }
    let mut order = Vec::with_capacity(m);
    let (mut mask, mut j) = (full, last);
    loop {
        order.push(targets[j]);
        let i = pred[mask * m + j];
        mask &= !(1 << j);
        if mask == 0 {
            break;
        }
        j = i as usize;
    }
    order.reverse();
    Ok((order, stats))
}
