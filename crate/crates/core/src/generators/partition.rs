use super::{Gadget, GeneratorError, Schedule};
use crate::tvg::{ClassKind, EdgeId, Hint, TvgInstance};

/// How an arm behaves during one phase of a 3-partition gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Every edge always present.
    Steady,
    /// Every edge present only at steps `t` with `t mod delta = delta - 1`.
    Flashing,
    /// Flashing, plus the edge at distance `i` from the attachment point is
    /// present at `phase_start + i`, so an agent leaving at `phase_start` never waits.
    Carrying,
}

/// An arm (or backbone) as a list of edges ordered away from its attachment point.
struct Arm {
    edges: Vec<EdgeId>,
}

fn present(mode: Mode, delta: u64, t: u64, phase_start: u64, distance: usize) -> bool {
    let flash = t % delta == delta - 1;
    match mode {
        Mode::Steady => true,
        Mode::Flashing => flash,
        Mode::Carrying => flash || t - phase_start == distance as u64,
    }
}

/// Appends `duration` steps in which arm `a` is in `mode(a)`.
fn phase(
    schedule: &mut Schedule,
    arms: &[Arm],
    m: usize,
    delta: u64,
    duration: u64,
    mode: impl Fn(usize) -> Mode,
) {
    let start = schedule.horizon();
    let mut row = vec![false; m];
    for t in start..start + duration {
        for (a, arm) in arms.iter().enumerate() {
            let md = mode(a);
            for (i, &e) in arm.edges.iter().enumerate() {
                row[e] = present(md, delta, t, start, i);
            }
        }
        schedule.step(&row);
    }
}

/// Validated 3-partition input: `(m, M, B)`.
fn check_multiset(s: &[u64], delta: u64) -> Result<(usize, u64, u64), GeneratorError> {
    if s.is_empty() || !s.len().is_multiple_of(3) {
        return Err(GeneratorError::invalid(format!(
            "multiset must hold 3m integers, got {}",
            s.len()
        )));
    }
    if s.contains(&0) {
        return Err(GeneratorError::invalid("multiset entries must be positive"));
    }
    if delta < 2 {
        return Err(GeneratorError::invalid("recurrence bound delta must be at least 2"));
    }
    let m = s.len() / 3;
    let total: u64 = s.iter().sum();
    if !total.is_multiple_of(m as u64) {
        return Err(GeneratorError::invalid(format!(
            "sum {total} is not divisible by m = {m}, so no target sum exists"
        )));
    }
    Ok((m, total, total / m as u64))
}

fn b_hint(delta: u64) -> Option<Hint> {
    Some(Hint {
        kind: ClassKind::B,
        delta: Some(delta),
        period: None,
    })
}

/// Builds a path hanging off `at`, returning its edge list.
fn add_arm(edges: &mut Vec<(usize, usize)>, next_vertex: &mut usize, at: usize, len: u64) -> Arm {
    let mut arm = Arm { edges: Vec::new() };
    let mut prev = at;
    for _ in 0..len {
        arm.edges.push(edges.len());
        edges.push((prev, *next_vertex));
        prev = *next_vertex;
        *next_vertex += 1;
    }
    arm
}

/// 3-partition gadget on a spider with recurrence bound `delta`.
///
/// Vertex `0` is the centre. Arms follow in order: one arm of length `s_i` for
/// every entry, `m` checkpoint arms of length 1, and the long arm of length
/// `k` (default `2M + 2m + 1`), each numbered outwards. The schedule
/// alternates `take` (`2B` steps, entry arms steady) and `check` (2 steps,
/// checkpoint arms steady) `m` times, then `finish` (`k` steps, long arm
/// carrying); every arm not named is flashing. The deadline is `2M + 2m + k`,
/// attainable iff the entries split into `m` triples of sum `B = M/m`.
pub fn gen_3partition_spider(s: &[u64], delta: u64, long_arm: Option<u64>) -> Result<Gadget, GeneratorError> {
    let (m, total, target) = check_multiset(s, delta)?;
    let min_k = 2 * total + 2 * m as u64 + 1;
    let k = long_arm.unwrap_or(min_k);
    if k < min_k {
        return Err(GeneratorError::invalid(format!(
            "long arm length must exceed 2M + 2m = {}, got {k}",
            min_k - 1
        )));
    }
    let mut edges = Vec::new();
    let mut next = 1usize;
    let mut arms: Vec<Arm> = s.iter().map(|&len| add_arm(&mut edges, &mut next, 0, len)).collect();
    arms.extend((0..m).map(|_| add_arm(&mut edges, &mut next, 0, 1)));
    arms.push(add_arm(&mut edges, &mut next, 0, k));
    let entries = 0..3 * m;
    let checks = 3 * m..4 * m;
    let long = 4 * m;
    let me = edges.len();

    let mut schedule = Schedule::default();
    let steady_if = |yes: bool| if yes { Mode::Steady } else { Mode::Flashing };
    for _ in 0..m {
        phase(&mut schedule, &arms, me, delta, 2 * target, |a| steady_if(entries.contains(&a)));
        phase(&mut schedule, &arms, me, delta, 2, |a| steady_if(checks.contains(&a)));
    }
    phase(&mut schedule, &arms, me, delta, k, |a| {
        if a == long {
            Mode::Carrying
        } else {
            Mode::Flashing
        }
    });
    let deadline = schedule.horizon();
    debug_assert_eq!(deadline, 2 * total + 2 * m as u64 + k);
    let instance = TvgInstance::new(next, edges, schedule.into_snapshots(), 0, b_hint(delta))?;
    Ok(Gadget { instance, deadline })
}

/// Closed-form constants of the 3-partition comb gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionCombConstants {
    pub m: u64,
    /// Target sum `B = M/m`.
    pub target: u64,
    /// Arm scale `l = 7m^2/2 - 3m/2 + 4`.
    pub scale: u64,
    /// Duration before `finish`: `2lBm + 7m^2/2 + 5m/2 + 1`.
    pub pre_finish: u64,
    /// Length of the long arm (default `pre_finish + 1`).
    pub long_arm: u64,
}

impl PartitionCombConstants {
    /// Total duration `pre_finish + long_arm`.
    pub fn deadline(&self) -> u64 {
        self.pre_finish + self.long_arm
    }
}

/// Validates a comb input and evaluates its constants.
pub fn partition_comb_constants(
    s: &[u64],
    delta: u64,
    long_arm: Option<u64>,
) -> Result<PartitionCombConstants, GeneratorError> {
    let (m, _, target) = check_multiset(s, delta)?;
    if m % 2 != 0 {
        return Err(GeneratorError::invalid(format!("m = {m} must be even for the comb gadget")));
    }
    let m = m as u64;
    let scale = 7 * m * m / 2 - 3 * m / 2 + 4;
    let pre_finish = 2 * scale * target * m + 7 * m * m / 2 + 5 * m / 2 + 1;
    let k = long_arm.unwrap_or(pre_finish + 1);
    if k <= pre_finish {
        return Err(GeneratorError::invalid(format!(
            "long arm length must exceed {pre_finish}, got {k}"
        )));
    }
    Ok(PartitionCombConstants {
        m,
        target,
        scale,
        pre_finish,
        long_arm: k,
    })
}

/// 3-partition gadget on a comb (`m` even) with recurrence bound `delta`.
///
/// Vertices `0..=4m` are the backbone `b_1 .. b_{4m+1}`. Entry `i` gets an arm
/// of length `l * s_i` at `b_{m/2+i}`; checkpoint `c_i` (length 1) sits at
/// `b_{m/2-(i-1)/2}` for odd `i` and at `b_{7m/2+i/2}` for even `i`; the long
/// arm hangs off `b_{4m+1}`. Edges are the backbone first, then each arm
/// outwards in that order.
///
/// Schedule: `take` (`2lB + 3m`, entry arms steady) alternating with
/// `check(j)` (`j + (j mod 2) + 2`, `c_j` steady) for `j < m`, then a last
/// `take`, `finalcheck` (`m/2 + 3`, `c_m` steady) and `finish` (`k`, long arm
/// carrying, backbone flashing). The backbone is steady before `finish`, and
/// all other arms flash. The agent starts at `b_{7m/2}`.
pub fn gen_3partition_comb(s: &[u64], delta: u64, long_arm: Option<u64>) -> Result<Gadget, GeneratorError> {
    let c = partition_comb_constants(s, delta, long_arm)?;
    let m = c.m as usize;
    let b = |j: usize| j - 1;
    let mut edges: Vec<(usize, usize)> = (1..=4 * m).map(|j| (b(j), b(j + 1))).collect();
    let mut arms = vec![Arm {
        edges: (0..4 * m).collect(),
    }];
    let mut next = 4 * m + 1;
    for (i, &len) in s.iter().enumerate() {
        arms.push(add_arm(&mut edges, &mut next, b(m / 2 + i + 1), c.scale * len));
    }
    for i in 1..=m {
        let at = if i % 2 == 1 { m / 2 - (i - 1) / 2 } else { 7 * m / 2 + i / 2 };
        arms.push(add_arm(&mut edges, &mut next, b(at), 1));
    }
    arms.push(add_arm(&mut edges, &mut next, b(4 * m + 1), c.long_arm));
    let backbone = 0;
    let entries = 1..=3 * m;
    let checkpoint = |j: usize| 3 * m + j;
    let long = 4 * m + 1;
    let me = edges.len();

    let mut schedule = Schedule::default();
    let take = 2 * c.scale * c.target + 3 * c.m;
    let steady_if = |yes: bool| if yes { Mode::Steady } else { Mode::Flashing };
    for j in 1..m {
        phase(&mut schedule, &arms, me, delta, take, |a| {
            steady_if(a == backbone || entries.contains(&a))
        });
        let dur = (j + j % 2 + 2) as u64;
        phase(&mut schedule, &arms, me, delta, dur, |a| {
            steady_if(a == backbone || a == checkpoint(j))
        });
    }
    phase(&mut schedule, &arms, me, delta, take, |a| {
        steady_if(a == backbone || entries.contains(&a))
    });
    phase(&mut schedule, &arms, me, delta, c.m / 2 + 3, |a| {
        steady_if(a == backbone || a == checkpoint(m))
    });
    debug_assert_eq!(schedule.horizon(), c.pre_finish);
    phase(&mut schedule, &arms, me, delta, c.long_arm, |a| {
        if a == long {
            Mode::Carrying
        } else {
            Mode::Flashing
        }
    });
    let deadline = schedule.horizon();
    debug_assert_eq!(deadline, c.deadline());
    let start = b(7 * m / 2);
    let instance = TvgInstance::new(next, edges, schedule.into_snapshots(), start, b_hint(delta))?;
    Ok(Gadget { instance, deadline })
}
