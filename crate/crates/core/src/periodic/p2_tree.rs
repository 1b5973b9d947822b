use serde::Serialize;

use super::{beyond_horizon, check_period};
use crate::solution::{Algorithm, SolveError, SolveStats, Solution};
use crate::tvg::{EdgeId, Journey, Move, NormalizedTvg, TemporalGraph, VertexId};

/// Availability of an edge in a period-2 instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeType {
    pub even: bool,
    pub odd: bool,
}

impl EdgeType {
    pub fn present(self, t: usize) -> bool {
        if t.is_multiple_of(2) {
            self.even
        } else {
            self.odd
        }
    }

    /// `"11"`, `"10"` (even steps only) or `"01"` (odd steps only).
    pub fn label(self) -> &'static str {
        match (self.even, self.odd) {
            (true, true) => "11",
            (true, false) => "10",
            (false, true) => "01",
            (false, false) => "00",
        }
    }

    /// First step at or after `t` at which the edge is present.
    fn next(self, t: usize) -> usize {
        if self.present(t) {
            t
        } else {
            t + 1
        }
    }
}

/// Reads every edge's type off the normalised presence function.
pub fn edge_types_p2(tvg: &NormalizedTvg) -> Result<Vec<EdgeType>, SolveError> {
    let m = tvg.graph().edge_count();
    if tvg.total_steps() >= 2 {
        check_period(tvg, 2)?;
        Ok((0..m)
            .map(|e| EdgeType {
                even: tvg.present(e, 0),
                odd: tvg.present(e, 1),
            })
            .collect())
    } else {
        // a single step: only constant presence is observable
        check_period(tvg, 1)?;
        Ok((0..m)
            .map(|_| EdgeType {
                even: true,
                odd: true,
            })
            .collect())
    }
}

/// Start parities at which the fastest cover-and-return of a subtree is available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SubtreeKind {
    /// At both parities.
    Fw11,
    /// Only when starting at an even step.
    Fw10,
    /// Only when starting at an odd step.
    Fw01,
}

/// Costs of covering the maximal subtree rooted at `vertex` (tree rooted at
/// the start), starting at `vertex` at a step of parity `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubtreeProfile {
    pub vertex: VertexId,
    pub kind: SubtreeKind,
    /// Fastest cover-and-return, `min(cw)`.
    pub mw: u64,
    /// Fastest cover without return, `min(c)`.
    pub m: u64,
    /// Foremost cover-and-return from parity `i`.
    pub cw: [u64; 2],
    /// Foremost cover from parity `i`, ending anywhere.
    pub c: [u64; 2],
}

/// Rooted tree with the per-child excursion costs the solver needs.
struct Rooted {
    types: Vec<EdgeType>,
    /// children[v]: (child, edge) in ascending child order
    children: Vec<Vec<(VertexId, EdgeId)>>,
    cw: Vec<[u64; 2]>,
    c: Vec<[u64; 2]>,
    /// exc[u][a]: leave the parent at parity a, cover T^u, be back at the parent
    exc: Vec<[u64; 2]>,
    /// fin[u][a]: leave the parent at parity a, cover T^u, end anywhere
    fin: Vec<[u64; 2]>,
}

/// Excursion class of a child as seen from its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Both,
    Even,
    Odd,
}

fn class_of(g: [u64; 2]) -> Class {
    use std::cmp::Ordering::*;
    match g[0].cmp(&g[1]) {
        Equal => Class::Both,
        Less => Class::Even,
        Greater => Class::Odd,
    }
}

/// Excursions that can be made without a wasted step, starting at parity `i`
/// with `a` even-start and `b` odd-start excursions: they must alternate.
fn free_excursions(i: usize, a: u64, b: u64) -> u64 {
    let pairs = 2 * a.min(b);
    let extra = if i == 0 { a > b } else { b > a };
    pairs + u64::from(extra)
}

/// Time from parity `i` at `v` until every excursion in the multiset is done:
/// the fastest costs plus one wasted step per excursion that cannot alternate.
fn excursions_cost(i: usize, sum_mw: u64, a: u64, b: u64) -> u64 {
    sum_mw + (a + b - free_excursions(i, a, b))
}

impl Rooted {
    fn build(tvg: &NormalizedTvg, types: Vec<EdgeType>) -> Rooted {
        let g = tvg.graph();
        let n = g.vertex_count();
        let s = tvg.start();
        let parent = g.bfs_parents(s);
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            if let Some((p, e)) = parent[v] {
                children[p].push((v, e));
            }
        }
        let dist = g.bfs_distances(s);
        let mut order: Vec<VertexId> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(dist[v]));
        let mut r = Rooted {
            types,
            children,
            cw: vec![[0; 2]; n],
            c: vec![[0; 2]; n],
            exc: vec![[0; 2]; n],
            fin: vec![[0; 2]; n],
        };
        for v in order {
            for i in 0..2 {
                r.cw[v][i] = r.cover_with_return(v, i);
                r.c[v][i] = r.cover(v, i).0;
            }
            if let Some((_, e)) = parent[v] {
                let ty = r.types[e];
                for a in 0..2 {
                    let down = ty.next(a);
                    let at_child = down + 1;
                    let back = at_child + r.cw[v][at_child % 2] as usize;
                    r.exc[v][a] = (ty.next(back) + 1 - a) as u64;
                    r.fin[v][a] = (at_child + r.c[v][at_child % 2] as usize - a) as u64;
                }
            }
        }
        r
    }

    /// (sum of fastest excursions, #even-start, #odd-start) over the children of `v`.
    fn tally(&self, v: VertexId) -> (u64, u64, u64) {
        let (mut sum, mut a, mut b) = (0, 0, 0);
        for &(u, _) in &self.children[v] {
            sum += self.exc[u][0].min(self.exc[u][1]);
            match class_of(self.exc[u]) {
                Class::Even => a += 1,
                Class::Odd => b += 1,
                Class::Both => {}
            }
        }
        (sum, a, b)
    }

    fn cover_with_return(&self, v: VertexId, i: usize) -> u64 {
        let (sum, a, b) = self.tally(v);
        excursions_cost(i, sum, a, b)
    }

    /// Cost of covering `T^v` from parity `i` without returning, and the child
    /// to finish in (lowest index among ties).
    fn cover(&self, v: VertexId, i: usize) -> (u64, Option<VertexId>) {
        let (sum, a, b) = self.tally(v);
        let mut best: (u64, Option<VertexId>) = (u64::MAX, None);
        for &(f, _) in &self.children[v] {
            let fm = self.exc[f][0].min(self.exc[f][1]);
            let (fa, fb) = match class_of(self.exc[f]) {
                Class::Even => (1, 0),
                Class::Odd => (0, 1),
                Class::Both => (0, 0),
            };
            let before = excursions_cost(i, sum - fm, a - fa, b - fb);
            let total = before + self.fin[f][(i + before as usize) % 2];
            if total < best.0 {
                best = (total, Some(f));
            }
        }
        if best.1.is_none() {
            best.0 = 0;
        }
        best
    }

    /// Orders excursions so that even-start and odd-start ones alternate as
    /// long as possible (children in ascending order within a class).
    fn excursion_order(&self, v: VertexId, skip: Option<VertexId>, i: usize) -> Vec<(VertexId, EdgeId)> {
        let mut even: Vec<(VertexId, EdgeId)> = Vec::new();
        let mut odd = Vec::new();
        let mut both = Vec::new();
        for &(u, e) in &self.children[v] {
            if Some(u) == skip {
                continue;
            }
            match class_of(self.exc[u]) {
                Class::Even => even.push((u, e)),
                Class::Odd => odd.push((u, e)),
                Class::Both => both.push((u, e)),
            }
        }
        let (mut ie, mut io, mut ib) = (0, 0, 0);
        let mut parity = i;
        let mut order = Vec::with_capacity(even.len() + odd.len() + both.len());
        while order.len() < even.len() + odd.len() + both.len() {
            let pick = if parity == 0 && ie < even.len() {
                ie += 1;
                even[ie - 1]
            } else if parity == 1 && io < odd.len() {
                io += 1;
                odd[io - 1]
            } else if ib < both.len() {
                ib += 1;
                both[ib - 1]
            } else if ie < even.len() {
                ie += 1;
                even[ie - 1]
            } else {
                io += 1;
                odd[io - 1]
            };
            parity = (parity + self.exc[pick.0][parity] as usize) % 2;
            order.push(pick);
        }
        order
    }

    /// Appends the witness for covering `T^v` from step `t`; returns the end step.
    fn emit(&self, v: VertexId, mut t: usize, with_return: bool, moves: &mut Vec<Move>) -> usize {
        let final_child = if with_return { None } else { self.cover(v, t % 2).1 };
        for (u, e) in self.excursion_order(v, final_child, t % 2) {
            t = self.cross(e, t, moves);
            t = self.emit(u, t, true, moves);
            t = self.cross(e, t, moves);
        }
        if let Some(f) = final_child {
            let e = self.children[v]
                .iter()
                .find(|&&(u, _)| u == f)
                .map(|&(_, e)| e)
                .expect("final child is a child");
            t = self.cross(e, t, moves);
            t = self.emit(f, t, false, moves);
        }
        t
    }

    fn cross(&self, e: EdgeId, t: usize, moves: &mut Vec<Move>) -> usize {
        let at = self.types[e].next(t);
        moves.push(Move { t: at as u64, edge: e });
        at + 1
    }

    fn profile(&self, v: VertexId) -> SubtreeProfile {
        let cw = self.cw[v];
        let kind = match class_of(cw) {
            Class::Both => SubtreeKind::Fw11,
            Class::Even => SubtreeKind::Fw10,
            Class::Odd => SubtreeKind::Fw01,
        };
        SubtreeProfile {
            vertex: v,
            kind,
            mw: cw[0].min(cw[1]),
            m: self.c[v][0].min(self.c[v][1]),
            cw,
            c: self.c[v],
        }
    }
}

fn rooted(tvg: &NormalizedTvg) -> Result<Rooted, SolveError> {
    let g = tvg.graph();
    if g.edge_count() + 1 != g.vertex_count() {
        return Err(SolveError::precondition("underlying graph is not a tree"));
    }
    let types = edge_types_p2(tvg)?;
    Ok(Rooted::build(tvg, types))
}

/// Profiles of every maximal subtree of the tree rooted at the start, indexed
/// by vertex. Costs refer to the infinite period-2 extension of the instance.
pub fn p2_profiles(tvg: &NormalizedTvg) -> Result<Vec<SubtreeProfile>, SolveError> {
    let r = rooted(tvg)?;
    Ok((0..tvg.graph().vertex_count()).map(|v| r.profile(v)).collect())
}

/// Exact DMVP on a tree whose presence function has period 2, in linear time.
///
/// An optimal journey enters each child subtree of a vertex once. With period 2
/// the excursion into a child subtree (down, cover, back up) has a fastest
/// cost available at both parities, only at even steps, or only at odd steps;
/// starting at the wrong parity costs exactly one extra step. Alternating
/// even-start and odd-start excursions avoids the most extra steps, so each
/// vertex's cover costs follow from its children's in `O(deg)`. Covering
/// without return additionally picks the child to finish in. The witness
/// follows the same choices; it is `Unreachable` if it ends after the horizon.
pub fn solve_tree_p2(tvg: &NormalizedTvg) -> Result<Solution, SolveError> {
    let r = rooted(tvg)?;
    let s = tvg.start();
    let mut journey = Journey::empty(s, 0);
    let end = r.emit(s, 0, false, &mut journey.moves);
    debug_assert_eq!(end as u64, r.c[s][0]);
    if end > tvg.total_steps() {
        return Err(beyond_horizon(end, tvg.total_steps()));
    }
    let stats = SolveStats {
        states_expanded: tvg.graph().vertex_count() as u64,
        candidates: r.children.iter().map(|c| c.len() as u64).sum(),
    };
    Ok(Solution::from_journey(journey, Algorithm::P2Tree, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tvg::{normalize, validate_journey, Snapshot, TvgInstance};

    /// Period-2 instance where edge `e` has type `types[e]`.
    fn typed(n: usize, edges: Vec<(usize, usize)>, types: &[&str], start: usize, steps: usize) -> NormalizedTvg {
        let snaps = (0..steps)
            .map(|t| Snapshot {
                duration: 1,
                active: (0..edges.len())
                    .filter(|&e| match types[e] {
                        "11" => true,
                        "10" => t % 2 == 0,
                        _ => t % 2 == 1,
                    })
                    .collect(),
            })
            .collect();
        normalize(&TvgInstance::new(n, edges, snaps, start, None).unwrap())
    }

    #[test]
    fn alternating_star_costs_four() {
        // (0,1) is never present at two consecutive steps, so 0-1-0-2 needs a wait
        let tvg = typed(3, vec![(0, 1), (0, 2)], &["10", "01"], 0, 8);
        let sol = solve_tree_p2(&tvg).unwrap();
        assert_eq!(sol.cost, 4);
        assert_eq!(crate::exact::solve_brute_force(&tvg).unwrap().cost, 4);
        let r = validate_journey(&tvg, &sol.journey);
        assert!(r.valid && r.covers_all);
    }

    #[test]
    fn static_tree_cost() {
        let edges = vec![(0, 1), (1, 2), (1, 3), (0, 4)];
        let tvg = typed(5, edges, &["11"; 4], 0, 20);
        assert_eq!(solve_tree_p2(&tvg).unwrap().cost, 2 * 4 - 2);
        let prof = p2_profiles(&tvg).unwrap();
        assert_eq!(prof[0].kind, SubtreeKind::Fw11);
        assert_eq!(prof[0].mw, 8);
        assert_eq!(prof[1].cw, [4, 4]);
    }

    #[test]
    fn single_leaf_profiles() {
        // child reached over a 10 edge: excursion 3 from even, 4 from odd
        let tvg = typed(3, vec![(0, 1), (1, 2)], &["11", "10"], 0, 20);
        let prof = p2_profiles(&tvg).unwrap();
        assert_eq!(prof[1].cw, [3, 4]);
        assert_eq!(prof[1].kind, SubtreeKind::Fw10);
        assert_eq!(prof[1].c, [1, 2]);
    }

    #[test]
    fn rejects_non_periodic() {
        let inst = TvgInstance::new(
            2,
            vec![(0, 1)],
            vec![
                Snapshot { duration: 1, active: vec![0] },
                Snapshot { duration: 1, active: vec![] },
                Snapshot { duration: 1, active: vec![] },
            ],
            0,
            None,
        )
        .unwrap();
        assert!(solve_tree_p2(&normalize(&inst)).is_err());
    }
}
