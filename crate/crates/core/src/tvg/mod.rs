//! Time-varying graph model: instances, normalisation, class reports and journeys.

mod classify;
mod graph;
mod instance;
mod journey;
mod normalize;

pub use classify::{classify, classify_normalized, ClassReport};
pub use graph::{EdgeId, Graph, VertexId};
pub use instance::{parse_instance, ClassKind, Hint, InstanceError, Snapshot, TvgInstance};
pub use journey::{validate_journey, CoverageReport, FirstViolation, Journey, Move, Violation};
pub use normalize::{duration_cap, normalize, NormalizedTvg, OutOfHorizon};

/// Read access shared by original and normalised instances.
pub trait TemporalGraph {
    fn graph(&self) -> &Graph;
    /// Number of time steps; valid departures are `0..horizon`.
    fn horizon(&self) -> u64;
    /// `rho(e, t)`; false outside the horizon.
    fn is_present(&self, e: EdgeId, t: u64) -> bool;
}
