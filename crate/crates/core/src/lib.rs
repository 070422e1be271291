//! Distinguishing numbers and distinguishing-critical graphs.
//!
//! A labelling of the vertices is *distinguishing* when only the identity
//! automorphism preserves it; the distinguishing number `D(G)` is the least
//! number of labels admitting one. A graph is *d-critical* when `D(G) = d`
//! and every nonempty proper induced subgraph has a different distinguishing
//! number.
//!
//! The crate covers the whole pipeline on graphs of order at most 64:
//!
//! * [`graph`] and [`metrics`]: bitset graphs, named families, invariants;
//! * [`graph6`]: the graph6 interchange format;
//! * [`automorphism`]: automorphism groups and canonical forms;
//! * [`distinguishing`]: `D(G)`, `D(G,k)` and the closed forms;
//! * [`criticality`] and [`audit`]: criticality decisions and structural checks;
//! * [`enumerate`] and [`suites`]: isomorph-free generation and exhaustive
//!   verification runs.
//!
//! ```
//! use distcrit::graph::NamedGraph;
//! use distcrit::distinguishing::distinguishing_number;
//!
//! let c5 = NamedGraph::Cycle(5).build().unwrap();
//! assert_eq!(distinguishing_number(&c5).unwrap().value, 3);
//! ```

pub mod audit;
pub mod automorphism;
pub mod criticality;
pub mod distinguishing;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod metrics;
pub mod suites;

pub use automorphism::{AutGroup, CanonicalForm, Permutation};
pub use distinguishing::{DistResult, Labeling};
pub use graph::{Graph, GraphError, NamedGraph};
