use serde::Serialize;

use crate::tvg::{EdgeId, Graph, VertexId};

/// Most specific shape label of a connected graph.
///
/// Trees resolve in the order path, star, spider, comb, tree; graphs with
/// cycles resolve to cycle, then `AlmostTree(c)` for cycle rank `1..=3`,
/// otherwise general. The `is_*` predicates of [`TopologyInfo`] report every
/// class a graph belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Shape {
    Path,
    Cycle,
    Tree,
    Spider,
    Comb,
    Star,
    AlmostTree(usize),
    General,
}

/// Largest cycle rank labelled as an almost-tree rather than general.
const ALMOST_TREE_LABEL_MAX: usize = 3;

/// A maximal path whose interior vertices have degree 2.
///
/// `vertices[0]` and `vertices.last()` are the endpoints; they coincide for a
/// loop hanging off a branch vertex (or a whole cycle).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Chain {
    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("chains are non-empty")
    }

    pub fn is_loop(&self) -> bool {
        self.first() == self.last()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TopologyInfo {
    pub shape: Shape,
    /// `|E| - |V| + 1`.
    pub cycle_rank: usize,
    /// Degree-1 vertices, ascending.
    pub leaves: Vec<VertexId>,
    pub degree2_paths: Vec<Chain>,
    pub is_tree: bool,
    pub is_path: bool,
    pub is_cycle: bool,
    pub is_star: bool,
    pub is_spider: bool,
    pub is_comb: bool,
    /// The unique vertex of degree > 2 of a spider that is not a path.
    pub center: Option<VertexId>,
    /// For a comb: the shortest path containing every degree-3 vertex.
    pub backbone: Option<Vec<VertexId>>,
}

pub fn detect_topology(g: &Graph) -> TopologyInfo {
    let n = g.vertex_count();
    let cycle_rank = g.cycle_rank();
    let is_tree = g.edge_count() + 1 == n;
    let max_degree = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    let leaves: Vec<VertexId> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    let high: Vec<VertexId> = (0..n).filter(|&v| g.degree(v) > 2).collect();

    let is_path = is_tree && max_degree <= 2;
    let is_cycle = !is_tree && n >= 3 && (0..n).all(|v| g.degree(v) == 2);
    let is_star = is_tree && n >= 4 && high.len() == 1 && g.degree(high[0]) == n - 1;
    let is_spider = is_tree && high.len() <= 1;
    let backbone = if is_tree && max_degree <= 3 {
        steiner_path(g, &high)
    } else {
        None
    };
    let is_comb = backbone.is_some();
    let center = if is_spider { high.first().copied() } else { None };

    let shape = if is_tree {
        if is_path {
            Shape::Path
        } else if is_star {
            Shape::Star
        } else if is_spider {
            Shape::Spider
        } else if is_comb {
            Shape::Comb
        } else {
            Shape::Tree
        }
    } else if is_cycle {
        Shape::Cycle
    } else if cycle_rank <= ALMOST_TREE_LABEL_MAX {
        Shape::AlmostTree(cycle_rank)
    } else {
        Shape::General
    };

    TopologyInfo {
        shape,
        cycle_rank,
        leaves,
        degree2_paths: degree2_paths(g, None),
        is_tree,
        is_path,
        is_cycle,
        is_star,
        is_spider,
        is_comb,
        center,
        backbone,
    }
}

/// The vertex sequence of the minimal subtree spanning `targets`, if that
/// subtree is a path. `g` must be a tree.
fn steiner_path(g: &Graph, targets: &[VertexId]) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    if targets.len() <= 1 {
        return Some(targets.to_vec());
    }
    let mut is_target = vec![false; n];
    for &t in targets {
        is_target[t] = true;
    }
    // prune non-target leaves until only the spanning subtree remains
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<VertexId> = (0..n).filter(|&v| degree[v] <= 1 && !is_target[v]).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &(w, _) in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] <= 1 && !is_target[w] {
                    stack.push(w);
                }
            }
        }
    }
    if (0..n).any(|v| alive[v] && degree[v] > 2) {
        return None;
    }
    let start = (0..n).find(|&v| alive[v] && degree[v] == 1)?;
    let mut order = vec![start];
    let (mut prev, mut at) = (usize::MAX, start);
    loop {
        let next = g
            .neighbors(at)
            .iter()
            .map(|&(w, _)| w)
            .find(|&w| alive[w] && w != prev);
        match next {
            Some(w) => {
                order.push(w);
                prev = at;
                at = w;
            }
            None => break,
        }
    }
    Some(order)
}

/// Bridge flags for the subgraph keeping edges with `mask[e]` (all if `None`).
pub fn bridges(g: &Graph, mask: Option<&[bool]>) -> Vec<bool> {
    let n = g.vertex_count();
    let keep = |e: EdgeId| mask.is_none_or(|m| m[e]);
    let mut is_bridge = vec![false; g.edge_count()];
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, edge used to enter, next neighbour index)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, via, ref mut i)) = stack.last_mut() {
            if let Some(&(w, e)) = g.neighbors(v).get(*i) {
                *i += 1;
                if !keep(e) || Some(e) == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(parent, _, _))) = (via, stack.last()) {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        is_bridge[e] = true;
                    }
                }
            }
        }
    }
    is_bridge
}

/// Decomposes the subgraph keeping edges with `mask[e]` into maximal chains.
///
/// Chains run between vertices whose masked degree is not 2; a component in
/// which every vertex has degree 2 yields one loop starting at its lowest vertex.
pub fn degree2_paths(g: &Graph, mask: Option<&[bool]>) -> Vec<Chain> {
    let n = g.vertex_count();
    let keep = |e: EdgeId| mask.is_none_or(|m| m[e]);
    let degree: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&&(_, e)| keep(e)).count())
        .collect();
    let mut used = vec![false; g.edge_count()];
    let mut chains = Vec::new();
    let follow = |start: VertexId, first: (VertexId, EdgeId), used: &mut Vec<bool>| {
        let mut chain = Chain {
            vertices: vec![start],
            edges: Vec::new(),
        };
        let (mut at, mut e) = (first.0, first.1);
        loop {
            used[e] = true;
            chain.vertices.push(at);
            chain.edges.push(e);
            if degree[at] != 2 || at == start {
                break;
            }
            match g.neighbors(at).iter().find(|&&(_, f)| keep(f) && !used[f]) {
                Some(&(w, f)) => {
                    at = w;
                    e = f;
                }
                None => break,
            }
        }
        chain
    };
    for v in 0..n {
        if degree[v] == 2 || degree[v] == 0 {
            continue;
        }
        for &(w, e) in g.neighbors(v) {
            if keep(e) && !used[e] {
                chains.push(follow(v, (w, e), &mut used));
            }
        }
    }
    for v in 0..n {
        if degree[v] != 2 {
            continue;
        }
        if let Some(&(w, e)) = g.neighbors(v).iter().find(|&&(_, e)| keep(e) && !used[e]) {
            chains.push(follow(v, (w, e), &mut used));
        }
    }
    chains
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    #[test]
    fn star_is_also_spider_and_tree() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (0, 3)]);
        let info = detect_topology(&g);
        assert_eq!(info.shape, Shape::Star);
        assert!(info.is_star && info.is_spider && info.is_tree && info.is_comb);
        assert_eq!(info.leaves, vec![1, 2, 3]);
        assert_eq!(info.center, Some(0));
    }

    #[test]
    fn five_cycle() {
        let info = detect_topology(&cycle(5));
        assert_eq!(info.shape, Shape::Cycle);
        assert_eq!(info.cycle_rank, 1);
        assert_eq!(info.degree2_paths.len(), 1);
        assert!(info.degree2_paths[0].is_loop());
        assert_eq!(info.degree2_paths[0].edges.len(), 5);
    }

    #[test]
    fn path_and_single_vertex() {
        assert_eq!(detect_topology(&Graph::new(1, vec![])).shape, Shape::Path);
        let p = detect_topology(&Graph::new(3, vec![(0, 1), (1, 2)]));
        assert_eq!(p.shape, Shape::Path);
        assert!(p.is_spider && p.is_comb);
        assert_eq!(p.center, None);
    }

    #[test]
    fn comb_and_general_tree() {
        // backbone 0-1-2 with teeth on 1 and 2, plus one more tooth on 0 side
        let comb = Graph::new(7, vec![(0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (0, 6)]);
        let info = detect_topology(&comb);
        assert_eq!(info.shape, Shape::Comb);
        assert_eq!(info.backbone, Some(vec![1, 2]));
        // two degree-3 vertices off a common centre: not a comb
        let tree = Graph::new(
            10,
            vec![(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)],
        );
        let info = detect_topology(&tree);
        assert_eq!(info.shape, Shape::Tree);
        assert!(!info.is_comb && !info.is_spider);
    }

    #[test]
    fn almost_tree_chains_and_bridges() {
        // triangle 0-1-2 with a pendant path 2-3-4
        let g = Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        let info = detect_topology(&g);
        assert_eq!(info.shape, Shape::AlmostTree(1));
        let b = bridges(&g, None);
        assert_eq!(b, vec![false, false, false, true, true]);
        let chains = degree2_paths(&g, None);
        assert_eq!(chains.len(), 2);
        assert!(chains.iter().any(|c| c.is_loop() && c.edges.len() == 3));
        assert!(chains.iter().any(|c| c.vertices == vec![2, 3, 4]));
    }

    #[test]
    fn masked_chains() {
        let g = cycle(4);
        let chains = degree2_paths(&g, Some(&[true, true, true, false]));
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].vertices, vec![0, 1, 2, 3]);
        assert!(bridges(&g, Some(&[true, true, true, false]))[..3].iter().all(|&b| b));
    }
}
