//! Fully dynamic breadth-first search for directed graphs.
//!
//! For a fixed root, [`DynamicBfs`] maintains under edge insertions and
//! deletions:
//!
//! * a breadth-first spanning tree (parent pointers and ordered child lists),
//! * the depth of every reachable vertex,
//! * a global BFS numbering in which every level is a contiguous block, and
//!   the end index of each block.
//!
//! Updates only re-emit the part of the numbering that can change. The
//! [`oracle`] module recomputes everything from scratch and is what the test
//! suites compare against.
//!
//! ```
//! use dynbfs::{verify, DynamicBfs, DynamicDigraph, VertexId};
//!
//! let graph = DynamicDigraph::from_edges(5, [(0, 1), (0, 2), (2, 3), (3, 4)])?;
//! let mut bfs = DynamicBfs::new(graph, VertexId(0))?;
//!
//! let out = bfs.insert_edge(VertexId(1), VertexId(4))?;
//! assert!(out.changed);
//! assert_eq!(bfs.state().level(VertexId(4)), Some(2));
//! assert_eq!(bfs.state().numbering.level_ends(), &[1, 3, 5]);
//!
//! bfs.delete_edge(VertexId(1), VertexId(4))?;
//! assert!(verify(bfs.state(), bfs.graph(), bfs.root()).is_ok());
//! # Ok::<(), dynbfs::BfsError>(())
//! ```

pub mod engine;
pub mod error;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod state;
pub mod trace;

pub use engine::{
    build_initial, counters_of, delete_edge, insert_edge, DynamicBfs, UpdateOutcome, WorkCounters,
};
pub use error::{BfsError, Result};
pub use graph::{DynamicDigraph, VertexId};
pub use oracle::{static_distances, verify, OracleVerdict};
pub use state::{BfsNumbering, BfsState, BfsTree, Violation};
pub use trace::{generate, parse_trace, TraceOp, UpdateTrace};
