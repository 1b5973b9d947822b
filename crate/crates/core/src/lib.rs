//! Foremost waypoint coverage (DMVP) on discrete-time time-varying graphs.

pub mod approx;
pub mod cli;
pub mod dispatch;
pub mod exact;
pub mod foremost;
pub mod generators;
pub mod periodic;
pub mod solution;
pub mod topology;
pub mod tvg;

pub use dispatch::{solve, solve_normalized, SolveOptions};
pub use solution::{Algorithm, SolveError, SolveStats, Solution};
