//! Solvers for periodic instances: the linear-time period-2 tree solver, the
//! fixed-period spider solver, the online comb policy and the wait-free
//! decision for spiders with uniform arms.

mod comb;
mod p2_tree;
mod spider;
mod uniform;

pub use comb::{comb_online_walk, solve_comb_online};
pub use p2_tree::{edge_types_p2, p2_profiles, solve_tree_p2, EdgeType, SubtreeKind, SubtreeProfile};
pub use spider::{
    classify_arms, solve_spider_fixed_p, solve_spider_fixed_p_with, spider_arms, spider_center, ArmClass,
    SpiderArm, SPIDER_MAX_PERIOD, SPIDER_MAX_STATES,
};
pub use uniform::{decide_uniform_spider_no_wait, NoWaitDecision};

use crate::solution::SolveError;
use crate::tvg::{EdgeId, Move, NormalizedTvg, TemporalGraph};

/// Checks that the normalised presence function repeats with period `p` over
/// the whole horizon and that the horizon spans at least one full period.
pub(crate) fn check_period(tvg: &NormalizedTvg, p: usize) -> Result<(), SolveError> {
    if p == 0 {
        return Err(SolveError::precondition("period must be at least 1"));
    }
    let steps = tvg.total_steps();
    if steps < p {
        return Err(SolveError::precondition(format!(
            "horizon of {steps} steps is shorter than the period {p}"
        )));
    }
    for e in 0..tvg.graph().edge_count() {
        if let Some(t) = (p..steps).find(|&t| tvg.present(e, t) != tvg.present(e, t % p)) {
            return Err(SolveError::precondition(format!(
                "instance is not periodic with period {p}: edge {e} differs at steps {} and {t}",
                t % p
            )));
        }
        if !(0..p).any(|t| tvg.present(e, t)) {
            return Err(SolveError::precondition(format!(
                "edge {e} is never present within a period"
            )));
        }
    }
    Ok(())
}

/// Presence of the infinite periodic extension of a normalised instance.
#[derive(Clone, Copy)]
pub(crate) struct Extension<'a> {
    tvg: &'a NormalizedTvg,
    p: usize,
}

impl<'a> Extension<'a> {
    /// Checks the period and wraps the instance.
    pub(crate) fn new(tvg: &'a NormalizedTvg, p: usize) -> Result<Self, SolveError> {
        check_period(tvg, p)?;
        Ok(Extension { tvg, p })
    }

    pub(crate) fn present(&self, e: EdgeId, t: usize) -> bool {
        self.tvg.present(e, t % self.p)
    }

    /// First step at or after `t` at which `e` is present (at most `p - 1` waits).
    pub(crate) fn next_presence(&self, e: EdgeId, t: usize) -> usize {
        (t..t + self.p)
            .find(|&x| self.present(e, x))
            .expect("check_period guarantees a presence in every period")
    }

    /// Greedy timing of `edges` from `t`; returns the arrival step.
    pub(crate) fn walk(&self, edges: &[EdgeId], mut t: usize, moves: Option<&mut Vec<Move>>) -> usize {
        match moves {
            Some(moves) => {
                for &e in edges {
                    t = self.next_presence(e, t);
                    moves.push(Move { t: t as u64, edge: e });
                    t += 1;
                }
            }
            None => {
                for &e in edges {
                    t = self.next_presence(e, t) + 1;
                }
            }
        }
        t
    }
}

/// Error for a witness that only completes after the instance ends.
pub(crate) fn beyond_horizon(arrival: usize, horizon: usize) -> SolveError {
    SolveError::Unreachable(format!(
        "the optimal periodic journey completes at step {arrival}, after the horizon {horizon}"
    ))
}
