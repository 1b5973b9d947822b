//! Solver selection: run a named algorithm, or pick the most specific exact
//! solver that applies to an instance.

use crate::approx::{approx_delta_tree, approx_spanning_traversal};
use crate::exact::{solve_brute_force_with, solve_exact_subset_dp, BruteForceLimits, SUBSET_DP_MAX_VERTICES};
use crate::periodic::{
    check_period, decide_uniform_spider_no_wait, solve_comb_online, solve_spider_fixed_p, solve_tree_p2,
    SPIDER_MAX_PERIOD,
};
use crate::solution::{Algorithm, SolveError, Solution};
use crate::topology::{
    detect_topology, solve_almost_tree, solve_cycle, solve_path, solve_tree_leaf_dp, AlmostTreeBounds, TopologyInfo,
    TREE_MAX_LEAVES,
};
use crate::tvg::{classify_normalized, normalize, NormalizedTvg, TemporalGraph, TvgInstance};

/// Knobs for [`solve`] and [`solve_normalized`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    /// Run this algorithm; `None` selects one automatically.
    pub algorithm: Option<Algorithm>,
    /// Period for the periodic solvers; detected when `None`.
    pub period: Option<usize>,
    /// Recurrence bound for the approximations; taken from the hint or the
    /// observed window when `None`.
    pub delta: Option<u64>,
    pub brute_limits: BruteForceLimits,
}

/// Solves an instance and reports the journey in original time.
pub fn solve(instance: &TvgInstance, options: &SolveOptions) -> Result<Solution, SolveError> {
    let tvg = normalize(instance);
    Ok(solve_normalized(&tvg, options)?.restore(&tvg))
}

/// Solves a normalised instance; the journey is in normalised time.
pub fn solve_normalized(tvg: &NormalizedTvg, options: &SolveOptions) -> Result<Solution, SolveError> {
    let info = detect_topology(tvg.graph());
    let algorithm = match options.algorithm {
        Some(a) => a,
        None => auto_algorithm(tvg, &info)?,
    };
    run(tvg, &info, algorithm, options)
}

/// Smallest period `p <= max` with which the normalised presence repeats.
pub fn detect_period(tvg: &NormalizedTvg, max: usize) -> Option<usize> {
    classify_normalized(tvg)
        .periods
        .into_iter()
        .map(|p| p as usize)
        .take_while(|&p| p <= max)
        .find(|&p| check_period(tvg, p).is_ok())
}

/// The exact solver [`solve_normalized`] picks when no algorithm is named.
///
/// Paths and cycles use their dedicated solvers. Trees use the leaf DP when
/// they have at most [`TREE_MAX_LEAVES`] leaves, otherwise the period-2 tree
/// solver or the fixed-period spider solver when the presence is periodic,
/// otherwise the subset DP. Graphs with cycles use the almost-tree solver
/// within its bounds, then the subset DP up to [`SUBSET_DP_MAX_VERTICES`].
pub fn auto_algorithm(tvg: &NormalizedTvg, info: &TopologyInfo) -> Result<Algorithm, SolveError> {
    let n = tvg.graph().vertex_count();
    if info.is_path {
        return Ok(Algorithm::Path);
    }
    if info.is_cycle {
        return Ok(Algorithm::Cycle);
    }
    if info.is_tree {
        if info.leaves.len() <= TREE_MAX_LEAVES {
            return Ok(Algorithm::Tree);
        }
        match detect_period(tvg, SPIDER_MAX_PERIOD) {
            Some(p) if p <= 2 => return Ok(Algorithm::P2Tree),
            Some(_) if info.is_spider => return Ok(Algorithm::SpiderP),
            _ => {}
        }
    } else {
        let bounds = AlmostTreeBounds::default();
        if info.cycle_rank <= bounds.max_cycle_rank && info.leaves.len() <= bounds.max_leaves {
            return Ok(Algorithm::AlmostTree);
        }
    }
    if n <= SUBSET_DP_MAX_VERTICES {
        return Ok(Algorithm::Exact);
    }
    Err(SolveError::precondition(format!(
        "no exact solver applies to this {n}-vertex instance; name an approximation explicitly"
    )))
}

fn recurrence_bound(tvg: &NormalizedTvg, options: &SolveOptions) -> Result<u64, SolveError> {
    options
        .delta
        .or_else(|| tvg.base().hint().and_then(|h| h.delta))
        .or_else(|| classify_normalized(tvg).min_delta_observed)
        .ok_or_else(|| SolveError::precondition("some edge is never present, so no recurrence bound exists"))
}

fn period(tvg: &NormalizedTvg, options: &SolveOptions, max: usize) -> Result<usize, SolveError> {
    if let Some(p) = options.period {
        return Ok(p);
    }
    if let Some(p) = tvg.base().hint().and_then(|h| h.period) {
        return Ok(p as usize);
    }
    detect_period(tvg, max).ok_or_else(|| SolveError::precondition(format!("no period up to {max} fits the instance")))
}

fn run(tvg: &NormalizedTvg, info: &TopologyInfo, algorithm: Algorithm, options: &SolveOptions) -> Result<Solution, SolveError> {
    match algorithm {
        Algorithm::Exact => solve_exact_subset_dp(tvg),
        Algorithm::Brute => solve_brute_force_with(tvg, options.brute_limits),
        Algorithm::Path => solve_path(tvg),
        Algorithm::Cycle => solve_cycle(tvg),
        Algorithm::Tree => solve_tree_leaf_dp(tvg, info),
        Algorithm::AlmostTree => solve_almost_tree(tvg, info),
        Algorithm::TreeBApprox => approx_delta_tree(tvg, recurrence_bound(tvg, options)?),
        Algorithm::SpanningApprox => approx_spanning_traversal(tvg, recurrence_bound(tvg, options)?),
        Algorithm::P2Tree => solve_tree_p2(tvg),
        Algorithm::SpiderP => solve_spider_fixed_p(tvg, period(tvg, options, SPIDER_MAX_PERIOD)?),
        Algorithm::CombOnline => solve_comb_online(tvg),
        Algorithm::UniformNowait => {
            let decision = decide_uniform_spider_no_wait(tvg)?;
            match decision.witness {
                Some(journey) => Ok(Solution::from_journey(journey, Algorithm::UniformNowait, Default::default())),
                None => Err(SolveError::Unreachable(format!(
                    "no wait-free covering journey of length {} exists",
                    decision.budget
                ))),
            }
        }
    }
}
