use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{GeneratorError, Schedule};
use crate::tvg::{ClassKind, Hint, Snapshot, TvgInstance, VertexId};

/// Underlying-graph family for [`gen_random_tvg`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RandomShape {
    /// Random spanning tree plus every other pair with probability `edge_percent`.
    General,
    Path,
    Cycle,
    Tree,
    /// A centre with 3 or more arms (a path when `n <= 3`).
    Spider,
    /// A backbone with arms on distinct interior backbone vertices.
    Comb,
    /// Random spanning tree plus this many extra edges.
    AlmostTree(usize),
}

/// Parameters of [`gen_random_tvg`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub class: ClassKind,
    pub n: usize,
    pub shape: RandomShape,
    /// Class R: number of snapshots. Classes B and P: number of unit steps.
    pub snapshots: usize,
    /// Class R: snapshot durations are drawn from `1..=max_duration`.
    pub max_duration: u64,
    /// Class B: every edge is present in every window of `delta` steps.
    pub delta: u64,
    /// Class P: presence repeats with this period.
    pub period: u64,
    /// Probability (percent) that an edge is present in a snapshot or step.
    pub density_percent: u32,
    /// Shape `General`: probability (percent) of each non-tree edge.
    pub edge_percent: u32,
    /// Start vertex; drawn uniformly when `None`.
    pub start: Option<VertexId>,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            class: ClassKind::R,
            n: 6,
            shape: RandomShape::General,
            snapshots: 6,
            max_duration: 3,
            delta: 2,
            period: 2,
            density_percent: 50,
            edge_percent: 30,
            start: None,
        }
    }
}

/// Seeded random instance of the requested class.
///
/// * R: `snapshots` snapshots with random durations; an edge that never
///   appears is added to one random snapshot, so every edge appears.
/// * B: `snapshots` unit steps; an edge absent for `delta - 1` consecutive
///   steps is forced present at the next one.
/// * P: each edge gets a random pattern of length `period` with at least one
///   presence, repeated over `snapshots` unit steps.
///
/// Consecutive identical steps are merged into one snapshot. The same
/// parameters and seed always give the same instance.
pub fn gen_random_tvg(params: &RandomParams, seed: u64) -> Result<TvgInstance, GeneratorError> {
    check(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n;
    let edges = random_graph(&mut rng, n, params.shape, params.edge_percent);
    let m = edges.len();
    let density = f64::from(params.density_percent) / 100.0;
    let (snapshots, hint) = match params.class {
        ClassKind::R => {
            let mut snaps: Vec<Snapshot> = (0..params.snapshots)
                .map(|_| Snapshot {
                    duration: rng.gen_range(1..=params.max_duration),
                    active: (0..m).filter(|_| rng.gen_bool(density)).collect(),
                })
                .collect();
            for e in 0..m {
                if !snaps.iter().any(|s| s.active.contains(&e)) {
                    let i = rng.gen_range(0..snaps.len());
                    snaps[i].active.push(e);
                    snaps[i].active.sort_unstable();
                }
            }
            let hint = Hint {
                kind: ClassKind::R,
                delta: None,
                period: None,
            };
            (snaps, hint)
        }
        ClassKind::B => {
            let mut absent = vec![0u64; m];
            let mut schedule = Schedule::default();
            let mut row = vec![false; m];
            for _ in 0..params.snapshots {
                for e in 0..m {
                    row[e] = absent[e] + 1 >= params.delta || rng.gen_bool(density);
                    absent[e] = if row[e] { 0 } else { absent[e] + 1 };
                }
                schedule.step(&row);
            }
            let hint = Hint {
                kind: ClassKind::B,
                delta: Some(params.delta),
                period: None,
            };
            (schedule.into_snapshots(), hint)
        }
        ClassKind::P => {
            let p = params.period as usize;
            let patterns: Vec<Vec<bool>> = (0..m)
                .map(|_| {
                    let mut pat: Vec<bool> = (0..p).map(|_| rng.gen_bool(density)).collect();
                    if !pat.contains(&true) {
                        pat[rng.gen_range(0..p)] = true;
                    }
                    pat
                })
                .collect();
            let mut schedule = Schedule::default();
            let mut row = vec![false; m];
            for t in 0..params.snapshots {
                for e in 0..m {
                    row[e] = patterns[e][t % p];
                }
                schedule.step(&row);
            }
            let hint = Hint {
                kind: ClassKind::P,
                delta: None,
                period: Some(params.period),
            };
            (schedule.into_snapshots(), hint)
        }
    };
    let start = params.start.unwrap_or_else(|| rng.gen_range(0..n));
    Ok(TvgInstance::new(n, edges, snapshots, start, Some(hint))?)
}

fn check(params: &RandomParams) -> Result<(), GeneratorError> {
    let n = params.n;
    if n == 0 {
        return Err(GeneratorError::invalid("n must be positive"));
    }
    if params.snapshots == 0 {
        return Err(GeneratorError::invalid("at least one snapshot or step is required"));
    }
    if params.density_percent > 100 || params.edge_percent > 100 {
        return Err(GeneratorError::invalid("percentages must lie in 0..=100"));
    }
    if let Some(s) = params.start {
        if s >= n {
            return Err(GeneratorError::invalid(format!("start {s} out of range (n = {n})")));
        }
    }
    match params.class {
        ClassKind::R if params.max_duration == 0 => {
            return Err(GeneratorError::invalid("max_duration must be at least 1"))
        }
        ClassKind::B if params.delta == 0 => {
            return Err(GeneratorError::invalid("delta must be at least 1"))
        }
        ClassKind::P if params.period == 0 => {
            return Err(GeneratorError::invalid("period must be at least 1"))
        }
        _ => {}
    }
    match params.shape {
        RandomShape::Cycle if n < 3 => Err(GeneratorError::invalid("a cycle needs at least 3 vertices")),
        RandomShape::AlmostTree(extra) if extra > n * (n - 1) / 2 - (n - 1) => Err(GeneratorError::invalid(
            format!("{n} vertices admit at most {} extra edges", n * (n - 1) / 2 - (n - 1)),
        )),
        _ => Ok(()),
    }
}

/// Random composition of `total` into `parts` positive integers.
fn composition(rng: &mut ChaCha8Rng, total: usize, parts: usize) -> Vec<usize> {
    debug_assert!(parts >= 1 && parts <= total);
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, total - 1, parts - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

/// Appends a path of `len` fresh vertices hanging off `at`.
fn hang_path(edges: &mut Vec<(VertexId, VertexId)>, next: &mut VertexId, at: VertexId, len: usize) {
    let mut prev = at;
    for _ in 0..len {
        edges.push((prev, *next));
        prev = *next;
        *next += 1;
    }
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<(VertexId, VertexId)> {
    (1..n).map(|v| (rng.gen_range(0..v), v)).collect()
}

/// Edge list of the requested family, vertices and edges randomly relabelled.
fn random_graph(rng: &mut ChaCha8Rng, n: usize, shape: RandomShape, edge_percent: u32) -> Vec<(VertexId, VertexId)> {
    let mut edges: Vec<(VertexId, VertexId)> = match shape {
        RandomShape::Path => (1..n).map(|v| (v - 1, v)).collect(),
        RandomShape::Cycle => (0..n).map(|v| (v, (v + 1) % n)).collect(),
        RandomShape::Tree => random_tree(rng, n),
        RandomShape::Spider if n <= 3 => (1..n).map(|v| (v - 1, v)).collect(),
        RandomShape::Spider => {
            let arms = rng.gen_range(3..=(n - 1).min(8));
            let mut edges = Vec::new();
            let mut next = 1;
            for len in composition(rng, n - 1, arms) {
                hang_path(&mut edges, &mut next, 0, len);
            }
            edges
        }
        RandomShape::Comb if n <= 3 => (1..n).map(|v| (v - 1, v)).collect(),
        RandomShape::Comb => {
            let spine = rng.gen_range(3..=n);
            let mut edges: Vec<(VertexId, VertexId)> = (1..spine).map(|v| (v - 1, v)).collect();
            let rest = n - spine;
            if rest > 0 {
                let arms = rng.gen_range(1..=rest.min(spine - 2));
                let mut spots: Vec<usize> = rand::seq::index::sample(rng, spine - 2, arms)
                    .into_iter()
                    .map(|i| i + 1)
                    .collect();
                spots.sort_unstable();
                let mut next = spine;
                for (at, len) in spots.into_iter().zip(composition(rng, rest, arms)) {
                    hang_path(&mut edges, &mut next, at, len);
                }
            }
            edges
        }
        RandomShape::General => {
            let mut edges = random_tree(rng, n);
            let p = f64::from(edge_percent) / 100.0;
            for u in 0..n {
                for v in u + 1..n {
                    let is_tree_edge = edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u));
                    if !is_tree_edge && rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
        RandomShape::AlmostTree(extra) => {
            let mut edges = random_tree(rng, n);
            let mut free: Vec<(VertexId, VertexId)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (u, v)))
                .collect();
            free.shuffle(rng);
            edges.extend(free.into_iter().take(extra));
            edges
        }
    };
    let mut label: Vec<VertexId> = (0..n).collect();
    label.shuffle(rng);
    for e in &mut edges {
        *e = (label[e.0], label[e.1]);
    }
    edges.shuffle(rng);
    edges
}
