//! Instance generators: hardness gadgets from set cover, 3-partition and
//! hamiltonian path, plus seeded random instances for each TVG class.

mod hamiltonian;
mod partition;
mod random;
mod setcover;

use thiserror::Error;

use crate::tvg::{EdgeId, InstanceError, Snapshot, TvgInstance};

pub use hamiltonian::gen_hamiltonian_p2;
pub use partition::{gen_3partition_comb, gen_3partition_spider, partition_comb_constants, PartitionCombConstants};
pub use random::{gen_random_tvg, RandomParams, RandomShape};
pub use setcover::{gen_setcover_comb, gen_setcover_star};

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("invalid generator input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

impl GeneratorError {
    fn invalid(message: impl Into<String>) -> Self {
        GeneratorError::InvalidInput(message.into())
    }
}

/// A generated gadget together with the deadline its decision question asks about.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub instance: TvgInstance,
    /// Total duration of the construction; the decision question is whether
    /// the optimum is at most this value.
    pub deadline: u64,
}

/// Accumulates snapshots for a generator.
///
/// Whole segments are appended verbatim; single steps are merged into the
/// previous snapshot when their active edge set is identical.
#[derive(Debug, Default)]
struct Schedule {
    snapshots: Vec<Snapshot>,
    merge_last: bool,
}

impl Schedule {
    fn segment(&mut self, duration: u64, mut active: Vec<EdgeId>) {
        active.sort_unstable();
        active.dedup();
        self.snapshots.push(Snapshot { duration, active });
        self.merge_last = false;
    }

    fn step(&mut self, present: &[bool]) {
        let active: Vec<EdgeId> = (0..present.len()).filter(|&e| present[e]).collect();
        if self.merge_last {
            if let Some(last) = self.snapshots.last_mut() {
                if last.active == active {
                    last.duration += 1;
                    return;
                }
            }
        }
        self.snapshots.push(Snapshot { duration: 1, active });
        self.merge_last = true;
    }

    fn horizon(&self) -> u64 {
        self.snapshots.iter().map(|s| s.duration).sum()
    }

    fn into_snapshots(self) -> Vec<Snapshot> {
        self.snapshots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps_merge_but_segments_do_not() {
        let mut s = Schedule::default();
        s.segment(2, vec![1, 0]);
        s.segment(1, vec![0, 1]);
        s.step(&[true, true]);
        s.step(&[true, true]);
        s.step(&[false, true]);
        let snaps = s.into_snapshots();
        let shape: Vec<(u64, Vec<EdgeId>)> = snaps.into_iter().map(|s| (s.duration, s.active)).collect();
        assert_eq!(
            shape,
            vec![(2, vec![0, 1]), (1, vec![0, 1]), (2, vec![0, 1]), (1, vec![1])]
        );
    }
}
