//! Exact solvers that exploit the shape of the underlying graph.

mod almost_tree;
mod cycle;
mod detect;
mod path;
mod tree;
mod walk;

pub use almost_tree::{solve_almost_tree, solve_almost_tree_with, AlmostTreeBounds};
pub use cycle::{cycle_order, solve_cycle};
pub use detect::{bridges, degree2_paths, detect_topology, Chain, Shape, TopologyInfo};
pub use path::{path_order, solve_path};
pub use tree::{solve_tree_leaf_dp, solve_tree_leaf_dp_with, TREE_MAX_LEAVES};
pub use walk::{greedy_timing, time_walk};
