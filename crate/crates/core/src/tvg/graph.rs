use std::collections::VecDeque;

/// Index of a vertex in the underlying graph.
pub type VertexId = usize;
/// Index of an edge in the underlying graph's edge list.
pub type EdgeId = usize;

/// Static undirected simple graph: the union of every edge that ever appears.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    // (neighbour, edge) sorted by neighbour index
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    /// Builds the graph without validating simplicity; callers that accept
    /// untrusted input go through [`crate::tvg::TvgInstance::new`].
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `from`, or `None` if `e` does not touch `from`.
    pub fn other_end(&self, e: EdgeId, from: VertexId) -> Option<VertexId> {
        let (a, b) = self.edges[e];
        if a == from {
            Some(b)
        } else if b == from {
            Some(a)
        } else {
            None
        }
    }

    /// Neighbours of `v` with the connecting edge, ordered by neighbour index.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.adj[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    /// Connectivity of the subgraph that keeps only edges with `keep[e]`.
    pub fn is_connected_with(&self, keep: &[bool]) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &self.adj[u] {
                if keep[e] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_with(&vec![true; self.edges.len()])
    }

    /// Hop distances from `source`; `usize::MAX` for unreachable vertices.
    pub fn bfs_distances(&self, source: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS tree from `root` as a parent array (`parent[root] == None`).
    /// Ties resolve to the lowest-index neighbour because adjacency is sorted.
    pub fn bfs_parents(&self, root: VertexId) -> Vec<Option<(VertexId, EdgeId)>> {
        let mut parent = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((u, e));
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Cyclomatic excess `|E| - |V| + 1` of a connected graph.
    pub fn cycle_rank(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.n)
    }
}
