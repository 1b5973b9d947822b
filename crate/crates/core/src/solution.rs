//! Result and error types shared by every solver.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::foremost::Unreachable;
use crate::tvg::{EdgeId, Journey, NormalizedTvg};

/// Identifies the solver that produced a [`Solution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Exact,
    Brute,
    Path,
    Cycle,
    Tree,
    AlmostTree,
    TreeBApprox,
    SpanningApprox,
    P2Tree,
    SpiderP,
    CombOnline,
    UniformNowait,
}

impl Algorithm {
    pub const ALL: [Algorithm; 12] = [
        Algorithm::Exact,
        Algorithm::Brute,
        Algorithm::Path,
        Algorithm::Cycle,
        Algorithm::Tree,
        Algorithm::AlmostTree,
        Algorithm::TreeBApprox,
        Algorithm::SpanningApprox,
        Algorithm::P2Tree,
        Algorithm::SpiderP,
        Algorithm::CombOnline,
        Algorithm::UniformNowait,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Brute => "brute",
            Algorithm::Path => "path",
            Algorithm::Cycle => "cycle",
            Algorithm::Tree => "tree",
            Algorithm::AlmostTree => "almost-tree",
            Algorithm::TreeBApprox => "tree-b-approx",
            Algorithm::SpanningApprox => "spanning-approx",
            Algorithm::P2Tree => "p2-tree",
            Algorithm::SpiderP => "spider-p",
            Algorithm::CombOnline => "comb-online",
            Algorithm::UniformNowait => "uniform-nowait",
        }
    }

    pub fn from_name(name: &str) -> Option<Algorithm> {
        Algorithm::ALL.into_iter().find(|a| a.name() == name)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Work counters reported alongside a solution.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveStats {
    pub states_expanded: u64,
    pub candidates: u64,
}

/// A covering journey with its temporal length.
///
/// Solvers work on a [`NormalizedTvg`] and return normalised times;
/// [`Solution::restore`] maps the result back onto the original instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub cost: u64,
    pub journey: Journey,
    pub algorithm: Algorithm,
    pub stats: SolveStats,
}

impl Solution {
    /// Builds a solution whose cost is the journey's temporal length.
    pub fn from_journey(journey: Journey, algorithm: Algorithm, stats: SolveStats) -> Self {
        Solution {
            cost: journey.temporal_length(),
            journey,
            algorithm,
            stats,
        }
    }

    /// The same solution expressed in original instance time, adding back the
    /// time skipped by normalisation before completion.
    pub fn restore(&self, tvg: &NormalizedTvg) -> Solution {
        let journey = tvg.restore_journey(&self.journey);
        let arrival = self.journey.arrival_time() as usize;
        let cost = tvg.restore_arrival(arrival) - journey.start_time;
        Solution {
            cost,
            journey,
            algorithm: self.algorithm,
            stats: self.stats,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("solution serialisation cannot fail")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    /// No covering journey completes within the horizon.
    #[error("unreachable within horizon: {0}")]
    Unreachable(String),
    /// A configured size bound would be exceeded.
    #[error("{what} {actual} exceeds the bound {limit}")]
    BoundExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },
    /// The solver does not apply to this topology or class.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A wait longer than the recurrence bound allows was needed.
    #[error("recurrence bound violated: edge {edge} absent for more than {limit} steps from time {t}")]
    RecurrenceViolation { edge: EdgeId, t: u64, limit: u64 },
}

impl SolveError {
    pub fn precondition(message: impl Into<String>) -> Self {
        SolveError::Precondition(message.into())
    }
}

impl From<Unreachable> for SolveError {
    fn from(e: Unreachable) -> Self {
        SolveError::Unreachable(e.to_string())
    }
}
