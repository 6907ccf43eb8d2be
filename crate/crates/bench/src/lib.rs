//! Workloads shared by the criterion benchmarks.

use dynbfs::trace::TraceOp;
use dynbfs::{generate, DynamicBfs, DynamicDigraph, VertexId};

/// Engine over a random graph with `m` edges on `n` vertices, rooted at 0.
pub fn random_engine(seed: u64, n: u32, m: u64) -> DynamicBfs {
    let trace = generate(seed, n, m, 0, 1.0).expect("valid parameters");
    let mut engine = DynamicBfs::new(DynamicDigraph::with_vertices(n as usize), VertexId(0))
        .expect("root exists");
    for op in trace.ops {
        if let TraceOp::Insert(x, y) = op {
            engine.insert_edge(x, y).expect("in range");
        }
    }
    engine
}

/// Engine over the path `0 -> 1 -> ... -> n-1`.
pub fn path_engine(n: u32) -> DynamicBfs {
    let edges = (0..n - 1).map(|i| (i, i + 1));
    let graph = DynamicDigraph::from_edges(n as usize, edges).expect("in range");
    DynamicBfs::new(graph, VertexId(0)).expect("root exists")
}

/// Tree edges of the current state, in BFS order.
pub fn tree_edges(engine: &DynamicBfs) -> Vec<(VertexId, VertexId)> {
    let state = engine.state();
    state
        .order()
        .iter()
        .filter_map(|&v| state.parent(v).map(|p| (p, v)))
        .collect()
}
