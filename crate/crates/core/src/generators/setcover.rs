use super::{Gadget, GeneratorError, Schedule};
use crate::tvg::{ClassKind, EdgeId, Hint, TvgInstance};

fn check_family(universe: usize, sets: &[Vec<usize>], k: usize) -> Result<(), GeneratorError> {
    if universe == 0 {
        return Err(GeneratorError::invalid("universe must contain at least one element"));
    }
    if sets.is_empty() {
        return Err(GeneratorError::invalid("set family is empty"));
    }
    for (i, s) in sets.iter().enumerate() {
        if s.is_empty() {
            return Err(GeneratorError::invalid(format!("set {} is empty", i + 1)));
        }
        let mut sorted = s.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(GeneratorError::invalid(format!("set {} repeats an element", i + 1)));
        }
        if let Some(&x) = s.iter().find(|&&x| x == 0 || x > universe) {
            return Err(GeneratorError::invalid(format!(
                "set {} contains {x}, outside the universe 1..={universe}",
                i + 1
            )));
        }
    }
    if k == 0 || k > sets.len() {
        return Err(GeneratorError::invalid(format!(
            "k must lie in 1..={}, got {k}",
            sets.len()
        )));
    }
    Ok(())
}

fn r_hint() -> Option<Hint> {
    Some(Hint {
        kind: ClassKind::R,
        delta: None,
        period: None,
    })
}

/// Set-cover gadget on a star.
///
/// Vertex `0` is the centre `c`, `1..=m` are the element points `v_j`,
/// `m+1..=m+n` the set points `p_i` and `m+n+1` the check point `p_0`. Edge
/// `j-1` joins `c` to `v_j`, edge `m+i-1` joins `c` to `p_i` and edge `m+n`
/// joins `c` to `p_0`. The snapshots are `pass(i), take(i), pass(i)` for every
/// set (with `take(i)` lasting `2|s_i|`), then `check` for 2 steps and `finish`
/// for `2k - 1`. The agent starts at `c`; a journey of length at most
/// `D = 2n + 2 sum |s_i| + 2k + 1` exists iff `k` sets cover the universe.
pub fn gen_setcover_star(universe: usize, sets: &[Vec<usize>], k: usize) -> Result<Gadget, GeneratorError> {
    check_family(universe, sets, k)?;
    let m = universe;
    let n = sets.len();
    let element_edge = |j: usize| -> EdgeId { j - 1 };
    let set_edge = |i: usize| -> EdgeId { m + i - 1 };
    let check_edge = m + n;
    let edges: Vec<(usize, usize)> = (1..=m + n + 1).map(|v| (0, v)).collect();

    let mut schedule = Schedule::default();
    for (idx, s) in sets.iter().enumerate() {
        let i = idx + 1;
        schedule.segment(1, vec![set_edge(i)]);
        schedule.segment(2 * s.len() as u64, s.iter().map(|&j| element_edge(j)).collect());
        schedule.segment(1, vec![set_edge(i)]);
    }
    schedule.segment(2, vec![check_edge]);
    schedule.segment(2 * k as u64 - 1, (1..=n).map(set_edge).collect());
    let deadline = schedule.horizon();
    debug_assert_eq!(
        deadline,
        2 * n as u64 + 2 * sets.iter().map(|s| s.len() as u64).sum::<u64>() + 2 * k as u64 + 1
    );
    let instance = TvgInstance::new(m + n + 2, edges, schedule.into_snapshots(), 0, r_hint())?;
    Ok(Gadget { instance, deadline })
}

/// Set-cover gadget on a comb.
///
/// Vertices `0..=m+n+1` form the backbone `b_0 .. b_{m+n+1}`; then come the
/// element teeth `v_1..v_m` (on `b_1..b_m`), the set teeth `p_1..p_n` (on
/// `b_{m+1}..b_{m+n}`), and the check teeth `p_0` (on `b_0`) and `p_{n+1}`
/// (on `b_{m+n+1}`). Edges are listed in that order, backbone first.
///
/// Snapshots: for every set `back` (`m+n`), `pass(i)` (1), `take(i)` (`3m`),
/// `pass(i)` (1); then `back` (`m+n`), `check` (2) and `finish`
/// (`m+n+2+2k`). `back`, `pass` and `take` include every backbone edge. The
/// agent starts at `b_0`; the deadline is the total duration,
/// `n^2 + 4mn + 4n + 2m + 2k + 4`.
pub fn gen_setcover_comb(universe: usize, sets: &[Vec<usize>], k: usize) -> Result<Gadget, GeneratorError> {
    check_family(universe, sets, k)?;
    let m = universe;
    let n = sets.len();
    let backbone_len = m + n + 1; // edges b_j b_{j+1}
    let b = |j: usize| j;
    let v = |j: usize| m + n + 1 + j; // j in 1..=m
    let p = |i: usize| 2 * m + n + 1 + i; // i in 1..=n
    let p0 = 2 * m + 2 * n + 2;
    let p_last = p0 + 1;

    let mut edges: Vec<(usize, usize)> = (0..backbone_len).map(|j| (b(j), b(j + 1))).collect();
    edges.extend((1..=m).map(|j| (b(j), v(j))));
    edges.extend((1..=n).map(|i| (b(m + i), p(i))));
    edges.push((b(0), p0));
    edges.push((b(m + n + 1), p_last));
    let backbone: Vec<EdgeId> = (0..backbone_len).collect();
    let element_edge = |j: usize| backbone_len + j - 1;
    let set_edge = |i: usize| backbone_len + m + i - 1;
    let check_edge = backbone_len + m + n;
    let last_check_edge = check_edge + 1;

    let with_backbone = |extra: Vec<EdgeId>| -> Vec<EdgeId> {
        let mut a = backbone.clone();
        a.extend(extra);
        a
    };
    let mut schedule = Schedule::default();
    let walk = (m + n) as u64;
    for (idx, s) in sets.iter().enumerate() {
        let i = idx + 1;
        schedule.segment(walk, backbone.clone());
        schedule.segment(1, with_backbone(vec![set_edge(i)]));
        schedule.segment(3 * m as u64, with_backbone(s.iter().map(|&j| element_edge(j)).collect()));
        schedule.segment(1, with_backbone(vec![set_edge(i)]));
    }
    schedule.segment(walk, backbone.clone());
    schedule.segment(2, vec![check_edge]);
    let mut finish: Vec<EdgeId> = (1..=n).map(set_edge).collect();
    finish.push(last_check_edge);
    schedule.segment(walk + 2 + 2 * k as u64, with_backbone(finish));
    let deadline = schedule.horizon();
    let (mu, nu, ku) = (m as u64, n as u64, k as u64);
    debug_assert_eq!(deadline, nu * nu + 4 * mu * nu + 4 * nu + 2 * mu + 2 * ku + 4);
    let instance = TvgInstance::new(p_last + 1, edges, schedule.into_snapshots(), b(0), r_hint())?;
    Ok(Gadget { instance, deadline })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::detect_topology;
    use crate::tvg::{classify, Snapshot, TemporalGraph};

    fn fig1_sets() -> Vec<Vec<usize>> {
        vec![vec![1, 2, 4], vec![2, 4], vec![3, 4], vec![3, 5]]
    }

    #[test]
    fn star_schedule_matches_construction() {
        let g = gen_setcover_star(5, &fig1_sets(), 2).unwrap();
        assert_eq!(g.deadline, 31);
        assert_eq!(g.instance.graph().vertex_count(), 11);
        let s = |d: u64, a: Vec<usize>| Snapshot { duration: d, active: a };
        let expected = vec![
            s(1, vec![5]),
            s(6, vec![0, 1, 3]),
            s(1, vec![5]),
            s(1, vec![6]),
            s(4, vec![1, 3]),
            s(1, vec![6]),
            s(1, vec![7]),
            s(4, vec![2, 3]),
            s(1, vec![7]),
            s(1, vec![8]),
            s(4, vec![2, 4]),
            s(1, vec![8]),
            s(2, vec![9]),
            s(3, vec![5, 6, 7, 8]),
        ];
        assert_eq!(g.instance.snapshots(), expected.as_slice());
        assert!(detect_topology(g.instance.graph()).is_star);
    }

    #[test]
    fn comb_duration_and_shape() {
        let sets = vec![vec![1, 2], vec![1]];
        let g = gen_setcover_comb(2, &sets, 1).unwrap();
        assert_eq!(g.deadline, 4 + 16 + 8 + 4 + 2 + 4);
        assert_eq!(g.instance.graph().vertex_count(), 12);
        let info = detect_topology(g.instance.graph());
        assert!(info.is_comb);
        assert!(classify(&g.instance).is_r);
    }

    #[test]
    fn rejects_bad_families() {
        assert!(gen_setcover_star(3, &[vec![1, 4]], 1).is_err());
        assert!(gen_setcover_star(3, &[vec![]], 1).is_err());
        assert!(gen_setcover_star(3, &[vec![1]], 2).is_err());
        assert!(gen_setcover_comb(3, &[vec![1, 1]], 1).is_err());
    }
}
