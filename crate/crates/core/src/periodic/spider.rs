use std::collections::HashMap;

use serde::Serialize;

use super::{beyond_horizon, Extension};
use crate::solution::{Algorithm, SolveError, SolveStats, Solution};
use crate::tvg::{EdgeId, Graph, Journey, NormalizedTvg, TemporalGraph, VertexId};

/// Largest period accepted by default by [`solve_spider_fixed_p`].
pub const SPIDER_MAX_PERIOD: usize = 4;
/// Largest number of (count vector, residue) states the spider DP may allocate.
pub const SPIDER_MAX_STATES: usize = 20_000_000;

/// One arm of a spider, listed outwards from the centre (centre excluded).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpiderArm {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl SpiderArm {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn leaf(&self) -> VertexId {
        *self.vertices.last().expect("arms are non-empty")
    }

    fn back_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().rev().copied()
    }
}

/// Centre of a spider: its vertex of degree > 2, or for a path its
/// lower-index endpoint. `None` if the graph is not a spider.
pub fn spider_center(g: &Graph) -> Option<VertexId> {
    let n = g.vertex_count();
    if g.edge_count() + 1 != n {
        return None;
    }
    let high: Vec<VertexId> = (0..n).filter(|&v| g.degree(v) > 2).collect();
    match high.len() {
        0 => (0..n).find(|&v| g.degree(v) <= 1),
        1 => Some(high[0]),
        _ => None,
    }
}

/// Arms of a tree around `center`, in ascending order of their first vertex.
pub fn spider_arms(g: &Graph, center: VertexId) -> Vec<SpiderArm> {
    g.neighbors(center)
        .iter()
        .map(|&(first, e)| {
            let mut arm = SpiderArm {
                vertices: vec![first],
                edges: vec![e],
            };
            let (mut prev, mut at) = (center, first);
            while let Some(&(next, e)) = g.neighbors(at).iter().find(|&&(w, _)| w != prev) {
                arm.vertices.push(next);
                arm.edges.push(e);
                prev = at;
                at = next;
            }
            arm
        })
        .collect()
}

/// Arms that behave identically at every residue: same extra time over their
/// fastest round trip, and same return residue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ArmClass {
    /// `e[t]`: round-trip cost from the centre at residue `t` minus the fastest round trip.
    pub e: Vec<u64>,
    /// `r[t]`: residue at which the round trip started at residue `t` ends.
    pub r: Vec<u64>,
    pub member_count: usize,
    /// Smallest arm index in the class.
    pub representative: usize,
    /// Arm indices (positions in [`spider_arms`]) in ascending order.
    pub members: Vec<usize>,
}

/// Per-arm costs on the periodic extension.
struct ArmCosts {
    /// round trip from the centre, by start residue
    round: Vec<u64>,
    /// out to the leaf only, by start residue
    out: Vec<u64>,
}

impl ArmCosts {
    fn new(ext: &Extension<'_>, arm: &SpiderArm, p: usize) -> ArmCosts {
        let trip: Vec<EdgeId> = arm.edges.iter().copied().chain(arm.back_edges()).collect();
        ArmCosts {
            round: (0..p).map(|t| (ext.walk(&trip, t, None) - t) as u64).collect(),
            out: (0..p).map(|t| (ext.walk(&arm.edges, t, None) - t) as u64).collect(),
        }
    }

    fn fastest(&self) -> u64 {
        *self.round.iter().min().expect("p >= 1")
    }

    fn signature(&self, p: usize) -> (Vec<u64>, Vec<u64>) {
        let m = self.fastest();
        let e = self.round.iter().map(|&c| c - m).collect();
        let r = (0..p).map(|t| (t as u64 + self.round[t]) % p as u64).collect();
        (e, r)
    }
}

fn group(costs: &[ArmCosts], arms: &[usize], p: usize) -> Vec<ArmClass> {
    let mut classes: Vec<ArmClass> = Vec::new();
    let mut index: HashMap<(Vec<u64>, Vec<u64>), usize> = HashMap::new();
    for &a in arms {
        let key = costs[a].signature(p);
        match index.get(&key) {
            Some(&k) => {
                classes[k].member_count += 1;
                classes[k].members.push(a);
            }
            None => {
                index.insert(key.clone(), classes.len());
                classes.push(ArmClass {
                    e: key.0,
                    r: key.1,
                    member_count: 1,
                    representative: a,
                    members: vec![a],
                });
            }
        }
    }
    classes
}

fn spider_parts(tvg: &NormalizedTvg) -> Result<(VertexId, Vec<SpiderArm>), SolveError> {
    let center = spider_center(tvg.graph()).ok_or_else(|| SolveError::precondition("underlying graph is not a spider"))?;
    Ok((center, spider_arms(tvg.graph(), center)))
}

/// Groups the arms of a spider with period `p` into equivalence classes.
pub fn classify_arms(tvg: &NormalizedTvg, p: usize) -> Result<Vec<ArmClass>, SolveError> {
    let (_, arms) = spider_parts(tvg)?;
    let ext = Extension::new(tvg, p)?;
    let costs: Vec<ArmCosts> = arms.iter().map(|a| ArmCosts::new(&ext, a, p)).collect();
    let all: Vec<usize> = (0..arms.len()).collect();
    Ok(group(&costs, &all, p))
}

pub fn solve_spider_fixed_p(tvg: &NormalizedTvg, p: usize) -> Result<Solution, SolveError> {
    solve_spider_fixed_p_with(tvg, p, SPIDER_MAX_PERIOD)
}

/// How the agent reaches the centre before the arm DP starts.
struct Opening {
    /// edges walked before standing at the centre
    prefix: Vec<EdgeId>,
    /// arms still to be covered from the centre
    remaining: Vec<usize>,
}

/// Best completion found for one opening.
struct Plan {
    end: usize,
    opening: usize,
    order: Vec<usize>,
    last: usize,
}

/// Exact DMVP on a spider whose presence function has period `p`.
///
/// From the centre an optimal journey covers whole arms one at a time, the
/// last one without returning. An arm's round-trip cost from residue `t` is
/// its fastest round trip `m(l)` plus an extra `e(l, t) < p`, and it returns at
/// residue `r(l, t)`; arms with equal `(e, r)` functions are interchangeable.
/// A DP over (arms left per class, current residue) minimises the total extra
/// time, and every arm is tried as the final one. A start on an arm either
/// finishes its own arm first or walks straight to the centre; both openings
/// are solved and the better one kept.
pub fn solve_spider_fixed_p_with(tvg: &NormalizedTvg, p: usize, max_period: usize) -> Result<Solution, SolveError> {
    if p > max_period {
        return Err(SolveError::BoundExceeded {
            what: "period",
            limit: max_period as u64,
            actual: p as u64,
        });
    }
    let (center, arms) = spider_parts(tvg)?;
    let ext = Extension::new(tvg, p)?;
    let s = tvg.start();
    let costs: Vec<ArmCosts> = arms.iter().map(|a| ArmCosts::new(&ext, a, p)).collect();

    let mut openings = Vec::new();
    if s == center {
        openings.push(Opening {
            prefix: Vec::new(),
            remaining: (0..arms.len()).collect(),
        });
    } else {
        let (own, depth) = arms
            .iter()
            .enumerate()
            .find_map(|(a, arm)| arm.vertices.iter().position(|&v| v == s).map(|i| (a, i + 1)))
            .expect("every vertex but the centre lies on an arm");
        let arm = &arms[own];
        let others: Vec<usize> = (0..arms.len()).filter(|&a| a != own).collect();
        // finish the own arm, then walk back to the centre
        let mut prefix: Vec<EdgeId> = arm.edges[depth..].to_vec();
        prefix.extend(arm.back_edges());
        openings.push(Opening {
            prefix,
            remaining: others,
        });
        if depth < arm.len() {
            openings.push(Opening {
                prefix: arm.edges[..depth].iter().rev().copied().collect(),
                remaining: (0..arms.len()).collect(),
            });
        }
    }

    let mut stats = SolveStats::default();
    let mut best: Option<Plan> = None;
    for (oi, opening) in openings.iter().enumerate() {
        let t0 = ext.walk(&opening.prefix, 0, None);
        let plan = if opening.remaining.is_empty() {
            stats.candidates += 1;
            Some(Plan {
                end: t0,
                opening: oi,
                order: Vec::new(),
                last: usize::MAX,
            })
        } else {
            plan_arms(&costs, &opening.remaining, p, t0, oi, &mut stats)?
        };
        if let Some(plan) = plan {
            if best.as_ref().is_none_or(|b| plan.end < b.end) {
                best = Some(plan);
            }
        }
    }
    let plan = best.expect("every opening yields a plan on the periodic extension");

    let opening = &openings[plan.opening];
    let mut journey = Journey::empty(s, 0);
    let mut t = ext.walk(&opening.prefix, 0, Some(&mut journey.moves));
    for &a in &plan.order {
        t = ext.walk(&arms[a].edges, t, Some(&mut journey.moves));
        let back: Vec<EdgeId> = arms[a].back_edges().collect();
        t = ext.walk(&back, t, Some(&mut journey.moves));
    }
    if plan.last != usize::MAX {
        t = ext.walk(&arms[plan.last].edges, t, Some(&mut journey.moves));
    }
    debug_assert_eq!(t, plan.end);
    if t > tvg.total_steps() {
        return Err(beyond_horizon(t, tvg.total_steps()));
    }
    Ok(Solution::from_journey(journey, Algorithm::SpiderP, stats))
}

/// Class-count DP for the arms in `remaining`, entered at the centre at step `t0`.
fn plan_arms(
    costs: &[ArmCosts],
    remaining: &[usize],
    p: usize,
    t0: usize,
    opening: usize,
    stats: &mut SolveStats,
) -> Result<Option<Plan>, SolveError> {
    let classes = group(costs, remaining, p);
    let k = classes.len();
    let mut stride = vec![1usize; k + 1];
    for c in 0..k {
        stride[c + 1] = stride[c]
            .checked_mul(classes[c].member_count + 1)
            .filter(|&s| s.saturating_mul(p) <= SPIDER_MAX_STATES)
            .ok_or(SolveError::BoundExceeded {
                what: "spider DP states",
                limit: SPIDER_MAX_STATES as u64,
                actual: u64::MAX,
            })?;
    }
    let count_states = stride[k];
    const NONE: u64 = u64::MAX;
    // extra[idx * p + residue]: least total extra time; pred: (class, previous residue)
    let mut extra = vec![NONE; count_states * p];
    let mut pred = vec![(u16::MAX, u8::MAX); count_states * p];
    extra[t0 % p] = 0;
    for idx in 0..count_states {
        for rho in 0..p {
            let cur = extra[idx * p + rho];
            if cur == NONE {
                continue;
            }
            stats.states_expanded += 1;
            for (c, class) in classes.iter().enumerate() {
                if (idx / stride[c]) % (class.member_count + 1) == class.member_count {
                    continue;
                }
                let next = (idx + stride[c]) * p + class.r[rho] as usize;
                let value = cur + class.e[rho];
                if value < extra[next] {
                    extra[next] = value;
                    pred[next] = (c as u16, rho as u8);
                }
            }
        }
    }

    let class_of: HashMap<usize, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(c, class)| class.members.iter().map(move |&a| (a, c)))
        .collect();
    let sum_fastest: u64 = remaining.iter().map(|&a| costs[a].fastest()).sum();
    let full = count_states - 1;
    let mut best: Option<(usize, usize, usize)> = None; // (end, last arm, residue)
    for &f in remaining {
        let c = class_of[&f];
        let before = full - stride[c];
        for rho in 0..p {
            let x = extra[before * p + rho];
            if x == NONE {
                continue;
            }
            stats.candidates += 1;
            let end = t0 as u64 + sum_fastest - costs[f].fastest() + x + costs[f].out[rho];
            if best.is_none_or(|(b, _, _)| (end as usize) < b) {
                best = Some((end as usize, f, rho));
            }
        }
    }
    let Some((end, last, rho)) = best else {
        return Ok(None);
    };

    // unwind the class sequence, then hand out arms of each class in index order
    let mut sequence = Vec::new();
    let (mut idx, mut r) = (full - stride[class_of[&last]], rho);
    while idx != 0 {
        let (c, prev) = pred[idx * p + r];
        sequence.push(c as usize);
        idx -= stride[c as usize];
        r = prev as usize;
    }
    sequence.reverse();
    let mut next_member = vec![0usize; k];
    let mut order = Vec::with_capacity(sequence.len());
    for c in sequence {
        let members = &classes[c].members;
        let mut a = members[next_member[c]];
        next_member[c] += 1;
        if a == last {
            a = members[next_member[c]];
            next_member[c] += 1;
        }
        order.push(a);
    }
    Ok(Some(Plan {
        end,
        opening,
        order,
        last,
    }))
}
