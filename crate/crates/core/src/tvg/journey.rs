use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::graph::{EdgeId, VertexId};
use super::TemporalGraph;

/// One traversal: take `edge` departing at step `t`, arriving at `t + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub t: u64,
    pub edge: EdgeId,
}

/// A timed walk. Serialises as `{"start", "startTime", "moves": [{"t", "edge"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Journey {
    pub start: VertexId,
    #[serde(rename = "startTime")]
    pub start_time: u64,
    pub moves: Vec<Move>,
}

impl Journey {
    pub fn empty(start: VertexId, start_time: u64) -> Self {
        Journey {
            start,
            start_time,
            moves: Vec::new(),
        }
    }

    pub fn arrival_time(&self) -> u64 {
        self.moves.last().map_or(self.start_time, |m| m.t + 1)
    }

    /// Arrival minus departure.
    pub fn temporal_length(&self) -> u64 {
        self.arrival_time().saturating_sub(self.start_time)
    }

    /// Number of edges traversed.
    pub fn topological_length(&self) -> usize {
        self.moves.len()
    }

    /// Appends `other`, which must start where and no earlier than this journey ends.
    pub fn extend(&mut self, other: &Journey) {
        self.moves.extend_from_slice(&other.moves);
    }

    /// Vertex sequence implied by the moves; stops at the first edge that does not continue the walk.
    pub fn vertices<G: TemporalGraph + ?Sized>(&self, g: &G) -> Vec<VertexId> {
        let mut out = vec![self.start];
        let mut at = self.start;
        for m in &self.moves {
            match g.graph().other_end(m.edge, at) {
                Some(next) => {
                    at = next;
                    out.push(next);
                }
                None => break,
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("journey serialisation cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Why a journey is not a valid journey of the TVG.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Violation {
    #[error("edge {edge} does not exist")]
    UnknownEdge { edge: EdgeId },
    #[error("edge {edge} is not incident to the current vertex {at}")]
    NotIncident { edge: EdgeId, at: VertexId },
    #[error("edge {edge} is absent at time {t}")]
    Absent { edge: EdgeId, t: u64 },
    #[error("departure time {t} is earlier than {earliest}")]
    TimeNotAdvancing { t: u64, earliest: u64 },
    #[error("departure time {t} is outside the horizon {horizon}")]
    BeyondHorizon { t: u64, horizon: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FirstViolation {
    #[serde(rename = "move")]
    pub move_index: usize,
    pub reason: Violation,
}

/// Result of checking a journey against a TVG and the cover requirement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverageReport {
    pub valid: bool,
    pub first_violation: Option<FirstViolation>,
    /// Sorted vertices reached before the first violation.
    pub visited_vertices: Vec<VertexId>,
    pub covers_all: bool,
    pub temporal_length: u64,
}

/// Checks walk adjacency, presence at each departure, and strictly advancing times.
pub fn validate_journey<G: TemporalGraph + ?Sized>(g: &G, j: &Journey) -> CoverageReport {
    let graph = g.graph();
    let n = graph.vertex_count();
    let horizon = g.horizon();
    let mut visited = vec![false; n];
    let mut violation = None;
    if j.start < n {
        visited[j.start] = true;
    }
    let mut at = j.start;
    let mut earliest = j.start_time;
    for (i, m) in j.moves.iter().enumerate() {
        let reason = if m.edge >= graph.edge_count() {
            Some(Violation::UnknownEdge { edge: m.edge })
        } else if m.t < earliest {
            Some(Violation::TimeNotAdvancing { t: m.t, earliest })
        } else if m.t >= horizon {
            Some(Violation::BeyondHorizon { t: m.t, horizon })
        } else if graph.other_end(m.edge, at).is_none() {
            Some(Violation::NotIncident { edge: m.edge, at })
        } else if !g.is_present(m.edge, m.t) {
            Some(Violation::Absent { edge: m.edge, t: m.t })
        } else {
            None
        };
        if let Some(reason) = reason {
            violation = Some(FirstViolation {
                move_index: i,
                reason,
            });
            break;
        }
        at = graph.other_end(m.edge, at).expect("checked incidence");
        visited[at] = true;
        earliest = m.t + 1;
    }
    let visited_vertices: Vec<VertexId> = (0..n).filter(|&v| visited[v]).collect();
    CoverageReport {
        valid: violation.is_none() && j.start < n,
        covers_all: violation.is_none() && visited_vertices.len() == n,
        first_violation: violation,
        visited_vertices,
        temporal_length: j.temporal_length(),
    }
}
