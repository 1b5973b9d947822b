use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::graph::{EdgeId, Graph, VertexId};
use super::TemporalGraph;

/// TVG class named in an instance hint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKind {
    R,
    B,
    P,
}

/// Optional class annotation carried by an instance file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hint {
    pub kind: ClassKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<u64>,
}

/// A static snapshot: the set of active edges and how many steps it lasts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub duration: u64,
    pub active: Vec<EdgeId>,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed instance at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
    #[error("underlying graph disconnected: vertex {vertex} is unreachable from vertex 0")]
    Disconnected { vertex: VertexId },
}

impl InstanceError {
    fn invalid(location: impl Into<String>, message: impl Into<String>) -> Self {
        InstanceError::Invalid {
            location: location.into(),
            message: message.into(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    n: usize,
    edges: Vec<[VertexId; 2]>,
    snapshots: Vec<Snapshot>,
    start: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hint: Option<Hint>,
}

/// A discrete-time TVG given as a sequence of static snapshots starting at time 0.
///
/// Snapshot `i` covers the half-open step interval `[start_i, start_i + duration_i)`,
/// every traversal takes one step, and the horizon is the sum of all durations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TvgInstance {
    graph: Graph,
    snapshots: Vec<Snapshot>,
    start: VertexId,
    hint: Option<Hint>,
    // exclusive end time of each snapshot
    ends: Vec<u64>,
    // presence[i][e]
    presence: Vec<Vec<bool>>,
}

impl TvgInstance {
    /// Validates and assembles an instance.
    pub fn new(
        n: usize,
        edges: Vec<(VertexId, VertexId)>,
        snapshots: Vec<Snapshot>,
        start: VertexId,
        hint: Option<Hint>,
    ) -> Result<Self, InstanceError> {
        if n == 0 {
            return Err(InstanceError::invalid("n", "vertex count must be positive"));
        }
        let mut seen = std::collections::HashSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            let loc = format!("edges[{i}]");
            if u >= n || v >= n {
                return Err(InstanceError::invalid(
                    loc,
                    format!("vertex index out of range (n = {n})"),
                ));
            }
            if u == v {
                return Err(InstanceError::invalid(loc, format!("self-loop on vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(InstanceError::invalid(loc, format!("duplicate edge {{{u}, {v}}}")));
            }
        }
        if start >= n {
            return Err(InstanceError::invalid(
                "start",
                format!("vertex index {start} out of range (n = {n})"),
            ));
        }
        let mut ends = Vec::with_capacity(snapshots.len());
        let mut presence = Vec::with_capacity(snapshots.len());
        let mut total: u64 = 0;
        for (i, snap) in snapshots.iter().enumerate() {
            if snap.duration == 0 {
                return Err(InstanceError::invalid(
                    format!("snapshots[{i}].duration"),
                    "duration must be at least 1",
                ));
            }
            let mut row = vec![false; edges.len()];
            for (j, &e) in snap.active.iter().enumerate() {
                let loc = format!("snapshots[{i}].active[{j}]");
                if e >= edges.len() {
                    return Err(InstanceError::invalid(
                        loc,
                        format!("edge index {e} out of range ({} edges)", edges.len()),
                    ));
                }
                if row[e] {
                    return Err(InstanceError::invalid(loc, format!("duplicate edge index {e}")));
                }
                row[e] = true;
            }
            total = total.checked_add(snap.duration).ok_or_else(|| {
                InstanceError::invalid(format!("snapshots[{i}].duration"), "total duration overflows")
            })?;
            ends.push(total);
            presence.push(row);
        }
        let graph = Graph::new(n, edges);
        if !graph.is_connected() {
            let dist = graph.bfs_distances(0);
            let vertex = dist.iter().position(|&d| d == usize::MAX).unwrap_or(0);
            return Err(InstanceError::Disconnected { vertex });
        }
        Ok(TvgInstance {
            graph,
            snapshots,
            start,
            hint,
            ends,
            presence,
        })
    }

    pub fn snapshots(&self) -> &[Snapshot] {
        &self.snapshots
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn hint(&self) -> Option<Hint> {
        self.hint
    }

    pub fn with_hint(mut self, hint: Option<Hint>) -> Self {
        self.hint = hint;
        self
    }

    pub fn with_start(mut self, start: VertexId) -> Result<Self, InstanceError> {
        if start >= self.graph.vertex_count() {
            return Err(InstanceError::invalid(
                "start",
                format!("vertex index {start} out of range (n = {})", self.graph.vertex_count()),
            ));
        }
        self.start = start;
        Ok(self)
    }

    /// Index of the snapshot covering step `t`, if `t` is inside the horizon.
    pub fn snapshot_at(&self, t: u64) -> Option<usize> {
        let i = self.ends.partition_point(|&end| end <= t);
        (i < self.ends.len()).then_some(i)
    }

    /// Whether edge `e` is active in snapshot `i`.
    pub fn snapshot_has(&self, i: usize, e: EdgeId) -> bool {
        self.presence[i][e]
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            n: self.graph.vertex_count(),
            edges: self.graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
            snapshots: self.snapshots.clone(),
            start: self.start,
            hint: self.hint,
        };
        serde_json::to_string(&file).expect("instance serialisation cannot fail")
    }
}

impl TemporalGraph for TvgInstance {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn horizon(&self) -> u64 {
        self.ends.last().copied().unwrap_or(0)
    }

    fn is_present(&self, e: EdgeId, t: u64) -> bool {
        match self.snapshot_at(t) {
            Some(i) => self.presence[i][e],
            None => false,
        }
    }
}

/// Parses an instance file (UTF-8 JSON) and validates it.
pub fn parse_instance(text: &str) -> Result<TvgInstance, InstanceError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|err| InstanceError::Syntax {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    })?;
    TvgInstance::new(
        file.n,
        file.edges.into_iter().map(|[u, v]| (u, v)).collect(),
        file.snapshots,
        file.start,
        file.hint,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_connected_instance() {
        let inst = parse_instance(
            r#"{"n":2,"edges":[[0,1]],"snapshots":[{"duration":3,"active":[0]}],"start":0}"#,
        )
        .unwrap();
        assert_eq!(inst.graph().vertex_count(), 2);
        assert_eq!(inst.horizon(), 3);
        assert!(inst.is_present(0, 2));
        assert!(!inst.is_present(0, 3));
    }

    #[test]
    fn isolated_vertex_is_rejected() {
        let err = parse_instance(
            r#"{"n":3,"edges":[[0,1]],"snapshots":[{"duration":1,"active":[0]}],"start":0}"#,
        )
        .unwrap_err();
        assert!(matches!(err, InstanceError::Disconnected { vertex: 2 }));
        assert!(err.to_string().contains("underlying graph disconnected"));
    }

    #[test]
    fn errors_carry_locations() {
        let cases = [
            (r#"{"n":2,"edges":[[0,2]],"snapshots":[],"start":0}"#, "edges[0]"),
            (r#"{"n":2,"edges":[[1,1]],"snapshots":[],"start":0}"#, "edges[0]"),
            (
                r#"{"n":2,"edges":[[0,1],[1,0]],"snapshots":[],"start":0}"#,
                "edges[1]",
            ),
            (
                r#"{"n":2,"edges":[[0,1]],"snapshots":[{"duration":0,"active":[]}],"start":0}"#,
                "snapshots[0].duration",
            ),
            (
                r#"{"n":2,"edges":[[0,1]],"snapshots":[{"duration":1,"active":[0,1]}],"start":0}"#,
                "snapshots[0].active[1]",
            ),
            (r#"{"n":2,"edges":[[0,1]],"snapshots":[],"start":5}"#, "start"),
        ];
        for (text, loc) in cases {
            let err = parse_instance(text).unwrap_err();
            assert!(err.to_string().starts_with(loc), "{err} should start with {loc}");
        }
        let err = parse_instance(r#"{"n":2,"edges":[[0,1]] "#).unwrap_err();
        assert!(matches!(err, InstanceError::Syntax { line: 1, .. }));
    }

    #[test]
    fn snapshot_boundaries_are_left_closed() {
        let inst = TvgInstance::new(
            2,
            vec![(0, 1)],
            vec![
                Snapshot { duration: 3, active: vec![] },
                Snapshot { duration: 2, active: vec![0] },
            ],
            0,
            None,
        )
        .unwrap();
        assert!(!inst.is_present(0, 2));
        assert!(inst.is_present(0, 3));
        assert!(inst.is_present(0, 4));
        assert!(!inst.is_present(0, 5));
        assert_eq!(inst.snapshot_at(5), None);
    }

    #[test]
    fn hint_round_trips() {
        let text = r#"{"n":1,"edges":[],"snapshots":[{"duration":1,"active":[]}],"start":0,"hint":{"kind":"P","period":2}}"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.to_json(), text);
    }
}
