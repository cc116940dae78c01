//! Matching preclusion for n-grid graphs `P_{k_0} □ … □ P_{k_{n-1}}`.
//!
//! * [`grid`]: the graphs, their layers `G_d[j]`, crossing sets and vertex classes.
//! * [`matching`]: matchings, a Hopcroft–Karp oracle and the nice-cycle algebra.
//! * [`constructions`]: explicit perfect and almost-perfect matchings.
//! * [`preclusion`]: exhaustive `mp(G)` and optimal-set characterisation checks.
//!
//! ```
//! use gridmp::{Grid, preclusion::{brute_force_mp, predicted_mp, SearchOptions}};
//!
//! let g: Grid = "3,3".parse().unwrap();
//! assert_eq!(brute_force_mp(&g, &SearchOptions::default()).unwrap(), predicted_mp(&g));
//! ```

pub mod constructions;
pub mod error;
pub mod grid;
pub mod matching;
pub mod preclusion;
pub mod trials;

pub use error::{ConstructionError, GridError, MatchingError, PreclusionError};
pub use grid::{Edge, EdgeId, Grid, PartitionView, Region, Vertex, VertexClass, VertexId};
pub use matching::{Cycle, FaultSet, Matching};
