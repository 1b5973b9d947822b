use super::{Gadget, GeneratorError, Schedule};
use crate::tvg::{ClassKind, Hint, TvgInstance, VertexId};

/// When an edge of the period-2 gadget is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Parity {
    /// Type 11: always present.
    Always,
    /// Type 10: present at even steps.
    Even,
    /// Type 01: present at odd steps.
    Odd,
}

impl Parity {
    fn at(self, t: u64) -> bool {
        match self {
            Parity::Always => true,
            Parity::Even => t.is_multiple_of(2),
            Parity::Odd => t % 2 == 1,
        }
    }
}

/// Period-2 gadget over a graph `G` with an even number `n >= 4` of vertices.
///
/// Vertices `0..n` are `v_0..v_{n-1}` (the vertices of `G`) and `n..2n` are
/// `c_0..c_{n-1}`. The edges of `G` come first and are always present. Then,
/// for each `i` in `0..n` (indices mod `n`), edges `(v_i, c_i)`,
/// `(v_i, c_{i+1})` and `(c_i, c_{i+1})` are added in that order:
/// `(v_i, c_i)` is present at odd steps for even `i` and at even steps for odd
/// `i`; the other two are present at even steps for even `i` and at odd steps
/// for odd `i`. The instance runs for `horizon` steps (default `8n`, twice the
/// period times the vertex count) and starts at `v0`.
///
/// A covering journey of length `2n - 1` (no waiting) exists iff `G` has a
/// hamiltonian path starting at `v0`.
pub fn gen_hamiltonian_p2(
    n: usize,
    graph_edges: &[(VertexId, VertexId)],
    v0: VertexId,
    horizon: Option<u64>,
) -> Result<Gadget, GeneratorError> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(GeneratorError::invalid(format!(
            "the graph needs an even number of at least 4 vertices, got {n}"
        )));
    }
    if v0 >= n {
        return Err(GeneratorError::invalid(format!("start vertex {v0} out of range (n = {n})")));
    }
    if let Some(&(u, v)) = graph_edges.iter().find(|&&(u, v)| u >= n || v >= n) {
        return Err(GeneratorError::invalid(format!(
            "edge ({u}, {v}) leaves the vertex range 0..{n}"
        )));
    }
    let horizon = horizon.unwrap_or(8 * n as u64);
    if horizon == 0 {
        return Err(GeneratorError::invalid("horizon must be positive"));
    }
    let c = |i: usize| n + i % n;
    let mut edges: Vec<(VertexId, VertexId)> = graph_edges.to_vec();
    let mut kinds = vec![Parity::Always; edges.len()];
    for i in 0..n {
        let even = i % 2 == 0;
        let (own, cross) = if even {
            (Parity::Odd, Parity::Even)
        } else {
            (Parity::Even, Parity::Odd)
        };
        edges.push((i, c(i)));
        kinds.push(own);
        edges.push((i, c(i + 1)));
        kinds.push(cross);
        edges.push((c(i), c(i + 1)));
        kinds.push(cross);
    }
    let mut schedule = Schedule::default();
    let mut row = vec![false; edges.len()];
    for t in 0..horizon {
        for (e, kind) in kinds.iter().enumerate() {
            row[e] = kind.at(t);
        }
        schedule.step(&row);
    }
    let hint = Some(Hint {
        kind: ClassKind::P,
        delta: None,
        period: Some(2),
    });
    let instance = TvgInstance::new(2 * n, edges, schedule.into_snapshots(), v0, hint)?;
    Ok(Gadget {
        instance,
        deadline: 2 * n as u64 - 1,
    })
}
