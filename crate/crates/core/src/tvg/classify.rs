use std::collections::HashMap;

use serde::Serialize;

use super::normalize::{normalize, NormalizedTvg};
use super::TemporalGraph;
use super::TvgInstance;

/// Observed class properties of an instance over its (normalised) horizon.
///
/// Nothing here is a claim about the infinite extension of the instance: `is_r`
/// only says every edge shows up at least once, `min_delta_observed` is the
/// smallest window length that contains a presence of every edge everywhere in
/// `[0, T')`, and `periods` lists every shift under which the presence function
/// agrees with itself on the horizon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassReport {
    pub is_r: bool,
    pub min_delta_observed: Option<u64>,
    pub periods: Vec<u64>,
}

impl ClassReport {
    pub fn has_period(&self, p: u64) -> bool {
        self.periods.binary_search(&p).is_ok()
    }
}

pub fn classify(instance: &TvgInstance) -> ClassReport {
    classify_normalized(&normalize(instance))
}

pub fn classify_normalized(tvg: &NormalizedTvg) -> ClassReport {
    let m = tvg.graph().edge_count();
    let horizon = tvg.total_steps() as u64;
    let base = tvg.base();

    // longest absence run per edge, scanning snapshot by snapshot
    let mut run = vec![0u64; m];
    let mut longest = vec![0u64; m];
    let mut seen = vec![false; m];
    for (i, snap) in base.snapshots().iter().enumerate() {
        for e in 0..m {
            if base.snapshot_has(i, e) {
                seen[e] = true;
                run[e] = 0;
            } else {
                run[e] += snap.duration;
                longest[e] = longest[e].max(run[e]);
            }
        }
    }
    let is_r = seen.iter().all(|&s| s);
    let worst_gap = longest.iter().copied().max().unwrap_or(0);
    let min_delta_observed = (worst_gap < horizon).then_some(worst_gap + 1);

    // two steps agree on every edge iff their snapshots have the same active set
    let mut canon: HashMap<Vec<usize>, u32> = HashMap::new();
    let snapshot_class: Vec<u32> = base
        .snapshots()
        .iter()
        .map(|s| {
            let mut key = s.active.clone();
            key.sort_unstable();
            let next = canon.len() as u32;
            *canon.entry(key).or_insert(next)
        })
        .collect();
    let steps: Vec<u32> = tvg
        .step_to_snapshot()
        .iter()
        .map(|&i| snapshot_class[i as usize])
        .collect();
    let total = steps.len();
    let periods = (1..=total)
        .filter(|&p| (0..total - p).all(|t| steps[t] == steps[t + p]))
        .map(|p| p as u64)
        .collect();

    ClassReport {
        is_r,
        min_delta_observed,
        periods,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tvg::Snapshot;

    fn triangle(snaps: Vec<(u64, Vec<usize>)>) -> TvgInstance {
        TvgInstance::new(
            3,
            vec![(0, 1), (1, 2), (0, 2)],
            snaps
                .into_iter()
                .map(|(duration, active)| Snapshot { duration, active })
                .collect(),
            0,
            None,
        )
        .unwrap()
    }

    #[test]
    fn static_graph() {
        let r = classify(&triangle(vec![(3, vec![0, 1, 2])]));
        assert!(r.is_r);
        assert_eq!(r.min_delta_observed, Some(1));
        assert!(r.has_period(1));
    }

    #[test]
    fn period_two_alternation() {
        let a = vec![0, 1];
        let b = vec![2];
        let r = classify(&triangle(vec![
            (1, a.clone()),
            (1, b.clone()),
            (1, a),
            (1, b),
        ]));
        assert_eq!(r.min_delta_observed, Some(2));
        assert!(r.has_period(2));
        assert!(!r.has_period(1));
        assert_eq!(r.periods, vec![2, 4]);
    }

    #[test]
    fn missing_edge_has_no_delta() {
        let r = classify(&triangle(vec![(2, vec![0, 1])]));
        assert!(!r.is_r);
        assert_eq!(r.min_delta_observed, None);
    }

    #[test]
    fn trailing_gap_counts() {
        // edge 2 is present only at step 0 and then absent for 3 steps
        let r = classify(&triangle(vec![(1, vec![0, 1, 2]), (3, vec![0, 1])]));
        assert_eq!(r.min_delta_observed, Some(4));
    }
}
