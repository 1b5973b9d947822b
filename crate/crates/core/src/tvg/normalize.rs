use thiserror::Error;

use super::graph::{EdgeId, Graph};
use super::instance::{Snapshot, TvgInstance};
use super::journey::{Journey, Move};
use super::TemporalGraph;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("time step {t} is outside the horizon [0, {horizon})")]
pub struct OutOfHorizon {
    pub t: u64,
    pub horizon: u64,
}

/// Snapshot-duration cap: no snapshot needs to last longer than `2n - 3` steps.
/// Clamped to 1 so single-vertex instances keep a non-empty horizon.
pub fn duration_cap(n: usize) -> u64 {
    (2 * n as u64).saturating_sub(3).max(1)
}

/// An instance with every snapshot truncated to [`duration_cap`] steps, plus the
/// bookkeeping needed to translate normalised times back to original times.
#[derive(Debug, Clone)]
pub struct NormalizedTvg {
    base: TvgInstance,
    step_to_snapshot: Vec<u32>,
    // skip[tau]: original time removed by snapshots that end at or before tau
    skip: Vec<u64>,
}

impl NormalizedTvg {
    /// The capped instance.
    pub fn base(&self) -> &TvgInstance {
        &self.base
    }

    pub fn start(&self) -> usize {
        self.base.start()
    }

    /// `T'`, the number of normalised steps.
    pub fn total_steps(&self) -> usize {
        self.step_to_snapshot.len()
    }

    pub fn step_to_snapshot(&self) -> &[u32] {
        &self.step_to_snapshot
    }

    /// Cumulative skipped time `eps(tau)` for `tau` in `[0, T']`.
    pub fn skip(&self, tau: usize) -> u64 {
        self.skip[tau]
    }

    /// Checked presence lookup.
    pub fn rho(&self, e: EdgeId, t: usize) -> Result<bool, OutOfHorizon> {
        if t >= self.total_steps() {
            return Err(OutOfHorizon {
                t: t as u64,
                horizon: self.total_steps() as u64,
            });
        }
        Ok(self.present(e, t))
    }

    /// Unchecked O(1) presence lookup for `t < T'`.
    #[inline]
    pub fn present(&self, e: EdgeId, t: usize) -> bool {
        self.base.snapshot_has(self.step_to_snapshot[t] as usize, e)
    }

    /// Original time of normalised step `tau < T'`.
    pub fn original_time(&self, tau: usize) -> u64 {
        tau as u64 + self.skip[tau]
    }

    /// Original arrival time for a normalised arrival (completion) time.
    ///
    /// The last move departs at `arrival - 1`, so the skip that applies is the
    /// one in force at that step, not at `arrival` itself.
    pub fn restore_arrival(&self, arrival: usize) -> u64 {
        if arrival == 0 {
            0
        } else {
            self.original_time(arrival - 1) + 1
        }
    }

    /// Maps a journey in normalised time to the equivalent journey on the
    /// original instance. Each departure keeps its snapshot, so validity carries over.
    pub fn restore_journey(&self, journey: &Journey) -> Journey {
        let start_time = if (journey.start_time as usize) < self.total_steps() {
            self.original_time(journey.start_time as usize)
        } else {
            self.restore_arrival(journey.start_time as usize)
        };
        Journey {
            start: journey.start,
            start_time,
            moves: journey
                .moves
                .iter()
                .map(|m| Move {
                    edge: m.edge,
                    t: self.original_time(m.t as usize),
                })
                .collect(),
        }
    }
}

impl TemporalGraph for NormalizedTvg {
    fn graph(&self) -> &Graph {
        self.base.graph()
    }

    fn horizon(&self) -> u64 {
        self.total_steps() as u64
    }

    fn is_present(&self, e: EdgeId, t: u64) -> bool {
        (t as usize) < self.total_steps() && self.present(e, t as usize)
    }
}

/// Caps every snapshot at `2n - 3` steps and records the skipped time.
pub fn normalize(instance: &TvgInstance) -> NormalizedTvg {
    let cap = duration_cap(instance.graph().vertex_count());
    let mut snapshots = Vec::with_capacity(instance.snapshots().len());
    let mut step_to_snapshot = Vec::new();
    let mut skip = vec![0u64];
    let mut skipped = 0u64;
    for (i, snap) in instance.snapshots().iter().enumerate() {
        let capped = snap.duration.min(cap);
        snapshots.push(Snapshot {
            duration: capped,
            active: snap.active.clone(),
        });
        for step in 0..capped {
            step_to_snapshot.push(i as u32);
            if step + 1 == capped {
                skipped += snap.duration - capped;
            }
            skip.push(skipped);
        }
    }
    let base = TvgInstance::new(
        instance.graph().vertex_count(),
        instance.graph().edges().to_vec(),
        snapshots,
        instance.start(),
        instance.hint(),
    )
    .expect("capping durations preserves validity");
    NormalizedTvg {
        base,
        step_to_snapshot,
        skip,
    }
}
