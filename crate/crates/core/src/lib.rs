//! Paths for a ground robot tethered to a drone flying a zig-zag.
//!
//! The drone's altitude profile and the tether budget define a corridor of
//! admissible robot heights over time. The solvers find the smallest
//! constant speed that keeps the robot inside it, then the path at that
//! speed with the fewest direction changes.

pub mod cli;
pub mod fixtures;
pub mod minlink;
pub mod minslope;
pub mod model;
pub mod num;
pub mod oracle;
pub mod predicates;

pub use minlink::{build_min_link_path, path_metrics, steepen_path, BetaPath, PathError, PathMetrics};
pub use minslope::{min_slope_bruteforce, min_slope_linear, Method, SlopeSolution};
pub use model::{build_corridor, parse_instance, Chain, Corridor, Instance, Point, ReflexPoint};
pub use num::Q;
