//! Exact computation of optimal pebbling and rubbling numbers.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: simple connected graphs with all-pairs distances, and
//!   generators for complete graphs, paths, cycles, Hamming graphs and
//!   Cartesian products.
//! * [`pebble`] and [`reach`]: distributions, moves, the weight function,
//!   and exact reachability / solvability under pebbling or rubbling moves.
//! * [`domination`]: exact distance-k domination numbers with certificates.
//! * [`bounds`]: the diameter upper bound and the domination-based lower
//!   bounds on the optimal numbers.
//! * [`search`]: exhaustive search for the optimal numbers and lifting of
//!   solvable distributions through `G □ K_n`.

pub mod bounds;
pub mod domination;
mod dyadic;
pub mod format;
pub mod graph;
pub mod pebble;
pub mod reach;
pub mod search;
mod vertex_set;

pub use dyadic::Dyadic;
pub use graph::{Graph, GraphError};
pub use pebble::{Distribution, Move, MoveSystem};
pub use vertex_set::VertexSet;

/// Version of the solving engine. Cached results from another version are
/// never reused.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
